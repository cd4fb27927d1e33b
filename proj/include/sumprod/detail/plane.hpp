#pragma once

// Exact planar kernels for the line census. Rational coordinates are scaled
// by a common denominator (collinearity is invariant under dilation) and
// handled in the narrowest integer type that cannot overflow; residues use
// modular slopes.

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sumprod/arith_set.hpp"
#include "sumprod/limits.hpp"

namespace sumprod::detail {

inline std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

template <class U>
inline unsigned ctz_wide(U v) noexcept {
    if constexpr (sizeof(U) <= 8) {
        return static_cast<unsigned>(__builtin_ctzll(static_cast<unsigned long long>(v)));
    } else {
        const auto lo = static_cast<std::uint64_t>(v);
        return lo ? static_cast<unsigned>(__builtin_ctzll(lo))
                  : 64U + static_cast<unsigned>(__builtin_ctzll(static_cast<std::uint64_t>(v >> 64)));
    }
}

// Binary gcd on unsigned machine integers.
template <class U>
inline U binary_gcd(U a, U b) noexcept {
    if (a == 0) return b;
    if (b == 0) return a;
    const unsigned shift = ctz_wide(a | b);
    a >>= ctz_wide(a);
    do {
        b >>= ctz_wide(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

template <class Int>
struct IntTraits;

template <>
struct IntTraits<std::int64_t> {
    using Unsigned = std::uint64_t;
    static std::size_t hash(std::int64_t v) noexcept { return mix64(static_cast<std::uint64_t>(v)); }
};

template <>
struct IntTraits<__int128> {
    using Unsigned = unsigned __int128;
    static std::size_t hash(__int128 v) noexcept {
        const auto u = static_cast<unsigned __int128>(v);
        return mix64(static_cast<std::uint64_t>(u) ^ mix64(static_cast<std::uint64_t>(u >> 64)));
    }
};

inline std::size_t hash_mpz(const mpz_class& z) noexcept {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()));
    for (std::size_t i = 0; i < mpz_size(z.get_mpz_t()); ++i)
        h = mix64(h ^ static_cast<std::uint64_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))));
    return h;
}

// Points with integer coordinates; directions reduced by gcd with a
// canonical sign so that both rays of a line share a key.
template <class Int>
struct IntegerPlane {
    std::vector<Int> xs, ys;

    using Dir = std::pair<Int, Int>;
    struct DirHash {
        std::size_t operator()(const Dir& d) const noexcept {
            if constexpr (std::is_same_v<Int, mpz_class>) {
                return hash_mpz(d.first) * 31 ^ hash_mpz(d.second);
            } else {
                return IntTraits<Int>::hash(d.first) ^ mix64(IntTraits<Int>::hash(d.second));
            }
        }
    };

    std::size_t size() const noexcept { return xs.size(); }

    Dir direction(std::size_t i, std::size_t j) const {
        Int dx = xs[j] - xs[i];
        Int dy = ys[j] - ys[i];
        if (dx < 0 || (dx == 0 && dy < 0)) {
            dx = -dx;
            dy = -dy;
        }
        if constexpr (std::is_same_v<Int, mpz_class>) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), dx.get_mpz_t(), dy.get_mpz_t());
            mpz_divexact(dx.get_mpz_t(), dx.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(dy.get_mpz_t(), dy.get_mpz_t(), g.get_mpz_t());
        } else {
            using U = typename IntTraits<Int>::Unsigned;
            const U adx = static_cast<U>(dx);
            const U ady = dy < 0 ? static_cast<U>(-dy) : static_cast<U>(dy);
            if constexpr (sizeof(Int) > 8) {
                if ((adx >> 64) == 0 && (ady >> 64) == 0) {
                    const auto x64 = static_cast<std::uint64_t>(adx), y64 = static_cast<std::uint64_t>(ady);
                    const std::uint64_t g = binary_gcd(x64, y64);
                    dx = static_cast<Int>(x64 / g);
                    dy = dy < 0 ? -static_cast<Int>(y64 / g) : static_cast<Int>(y64 / g);
                    return {dx, dy};
                }
            }
            const Int g = static_cast<Int>(binary_gcd(adx, ady));
            if (g > 1) {
                dx /= g;
                dy /= g;
            }
        }
        return {std::move(dx), std::move(dy)};
    }
};

// Points of F_p^2; a direction is the projective slope (1, m) or (0, 1).
struct ResiduePlane {
    std::vector<std::uint64_t> xs, ys;
    std::uint64_t p = 2;

    using Dir = std::pair<std::uint64_t, std::uint64_t>;
    struct DirHash {
        std::size_t operator()(const Dir& d) const noexcept { return mix64(d.first) ^ mix64(d.second * 31 + 7); }
    };

    std::size_t size() const noexcept { return xs.size(); }

    static std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
        __int128 t = 0, new_t = 1, r = p, new_r = a;
        while (new_r != 0) {
            const __int128 quotient = r / new_r;
            t -= quotient * new_t;
            std::swap(t, new_t);
            r -= quotient * new_r;
            std::swap(r, new_r);
        }
        if (t < 0) t += p;
        return static_cast<std::uint64_t>(t);
    }

    Dir direction(std::size_t i, std::size_t j) const {
        const std::uint64_t dx = xs[j] >= xs[i] ? xs[j] - xs[i] : p - (xs[i] - xs[j]);
        const std::uint64_t dy = ys[j] >= ys[i] ? ys[j] - ys[i] : p - (ys[i] - ys[j]);
        if (dx == 0) return {0, 1};
        return {1, static_cast<std::uint64_t>(static_cast<unsigned __int128>(dy) * inverse(dx, p) % p)};
    }
};

// Union of the grids S_k x S_k with a membership bit per grid.
template <FieldValue F>
struct GridUnion {
    std::vector<std::pair<F, F>> points;  // sorted
    std::vector<std::uint8_t> masks;
};

template <FieldValue F>
GridUnion<F> grid_union(const std::vector<const ArithSet<F>*>& grids, const Limits& limits) {
    std::vector<std::tuple<F, F, std::uint8_t>> raw;
    std::size_t total = 0;
    for (const auto* g : grids) total += g->size() * g->size();
    raw.reserve(total);
    for (std::size_t k = 0; k < grids.size(); ++k) {
        if (k) grids[0]->check_same_field(*grids[k]);
        for (const F& u : *grids[k])
            for (const F& v : *grids[k]) raw.emplace_back(u, v, static_cast<std::uint8_t>(1U << k));
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    GridUnion<F> out;
    for (auto& [u, v, m] : raw) {
        if (!out.points.empty() && out.points.back().first == u && out.points.back().second == v) {
            out.masks.back() |= m;
        } else {
            out.points.emplace_back(u, v);
            out.masks.push_back(m);
        }
    }
    const std::size_t n = out.points.size();
    check_ceiling(n * n, limits.max_line_pairs, "line census point pairs");
    return out;
}

// Builds the narrowest exact plane for the points and invokes fn(plane).
template <FieldValue F, class Fn>
void with_plane(const GridUnion<F>& grid, Fn&& fn) {
    if constexpr (is_rational_v<F>) {
        mpz_class lcm = 1;
        for (const auto& [u, v] : grid.points) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), u.value().get_den_mpz_t());
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.value().get_den_mpz_t());
        }
        std::vector<mpz_class> xs, ys;
        xs.reserve(grid.points.size());
        ys.reserve(grid.points.size());
        std::size_t bits = 0;
        for (const auto& [u, v] : grid.points) {
            xs.push_back(u.value().get_num() * (lcm / u.value().get_den()));
            ys.push_back(v.value().get_num() * (lcm / v.value().get_den()));
            bits = std::max({bits, mpz_sizeinbase(xs.back().get_mpz_t(), 2), mpz_sizeinbase(ys.back().get_mpz_t(), 2)});
        }
        // Differences need one more bit than the coordinates.
        if (bits <= 61) {
            IntegerPlane<std::int64_t> plane;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                plane.xs.push_back(xs[i].get_si());
                plane.ys.push_back(ys[i].get_si());
            }
            fn(plane);
        } else if (bits <= 125) {
            IntegerPlane<__int128> plane;
            auto to128 = [](const mpz_class& z) {
                mpz_class mag = abs(z);
                const mpz_class lo_mask = (mpz_class(1) << 64) - 1;
                const mpz_class lo = mag & lo_mask;
                const mpz_class hi = mag >> 64;
                const auto value = (static_cast<__int128>(hi.get_ui()) << 64) | static_cast<__int128>(lo.get_ui());
                return sgn(z) < 0 ? -value : value;
            };
            for (std::size_t i = 0; i < xs.size(); ++i) {
                plane.xs.push_back(to128(xs[i]));
                plane.ys.push_back(to128(ys[i]));
            }
            fn(plane);
        } else {
            IntegerPlane<mpz_class> plane{std::move(xs), std::move(ys)};
            fn(plane);
        }
    } else {
        ResiduePlane plane;
        plane.p = grid.points.empty() ? 2 : grid.points.front().first.modulus();
        for (const auto& [u, v] : grid.points) {
            plane.xs.push_back(u.value());
            plane.ys.push_back(v.value());
        }
        fn(plane);
    }
}

using ClassCounts = std::array<std::uint64_t, 8>;

// Open-addressing map from directions to per-anchor accumulators, reused
// across anchors; a generation stamp makes reset O(1).
template <class Dir, class Hash, class Value>
class DirTable {
public:
    void reset(std::size_t expected) {
        std::size_t want = 16;
        while (want < 2 * expected + 2) want <<= 1;
        if (want > keys_.size()) {
            keys_.assign(want, Dir{});
            values_.assign(want, Value{});
            stamps_.assign(want, 0);
            generation_ = 0;
        }
        mask_ = keys_.size() - 1;
        used_.clear();
        if (++generation_ == 0) {
            std::fill(stamps_.begin(), stamps_.end(), 0);
            generation_ = 1;
        }
    }

    // Returns the accumulator for d; inserted tells whether it is new.
    Value& find_or_insert(Dir&& d, bool& inserted) {
        std::size_t k = hash_(d) & mask_;
        while (stamps_[k] == generation_) {
            if (keys_[k] == d) {
                inserted = false;
                return values_[k];
            }
            k = (k + 1) & mask_;
        }
        stamps_[k] = generation_;
        keys_[k] = std::move(d);
        values_[k] = Value{};
        used_.push_back(k);
        inserted = true;
        return values_[k];
    }

    template <class Fn>
    void for_each(Fn&& fn) {
        for (std::size_t k : used_) fn(values_[k]);
    }

private:
    std::vector<Dir> keys_;
    std::vector<Value> values_;
    std::vector<std::uint32_t> stamps_;
    std::vector<std::size_t> used_;
    std::size_t mask_ = 0;
    std::uint32_t generation_ = 0;
    Hash hash_;
};

struct LineAcc {
    std::size_t first = 0;  // lowest point index on the line other than the anchor
    std::uint64_t others = 0;
    ClassCounts counts{};
};

/// Groups the other points by direction from each anchor. Calls
/// anchor(table) once per anchor with the direction classes, and
/// emit(counts) once per line through at least two points, where
/// counts[mask] is the number of the line's points with that membership;
/// a line is emitted from its lowest-index point. O(m^2) time, O(m) memory.
template <class Plane, class Anchor, class Emit>
void scan_directions(const Plane& plane, const std::vector<std::uint8_t>& masks, Anchor&& anchor, Emit&& emit) {
    const std::size_t m = plane.size();
    DirTable<typename Plane::Dir, typename Plane::DirHash, LineAcc> table;
    for (std::size_t i = 0; i < m; ++i) {
        table.reset(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            bool inserted = false;
            LineAcc& acc = table.find_or_insert(plane.direction(i, j), inserted);
            if (inserted) acc.first = j;
            ++acc.others;
            ++acc.counts[masks[j]];
        }
        anchor(table);
        table.for_each([&](LineAcc& acc) {
            if (acc.first < i) return;
            ++acc.counts[masks[i]];
            emit(acc.counts);
        });
    }
}

template <class Plane, class Emit>
void for_each_line(const Plane& plane, const std::vector<std::uint8_t>& masks, Emit&& emit) {
    scan_directions(plane, masks, [](auto&) {}, std::forward<Emit>(emit));
}

/// Ordered triples of distinct points on one line with the k-th point in
/// the grid of bit roles[k].
inline std::uint64_t ordered_distinct_triples(const ClassCounts& c, const std::array<std::uint8_t, 3>& roles) {
    std::int64_t total = 0;
    for (unsigned m1 = 1; m1 < 8; ++m1) {
        if (!(m1 & roles[0]) || !c[m1]) continue;
        for (unsigned m2 = 1; m2 < 8; ++m2) {
            if (!(m2 & roles[1])) continue;
            const auto second = static_cast<std::int64_t>(c[m2]) - (m2 == m1);
            if (second <= 0) continue;
            for (unsigned m3 = 1; m3 < 8; ++m3) {
                if (!(m3 & roles[2])) continue;
                const auto third = static_cast<std::int64_t>(c[m3]) - (m3 == m1) - (m3 == m2);
                if (third <= 0) continue;
                total += static_cast<std::int64_t>(c[m1]) * second * third;
            }
        }
    }
    return static_cast<std::uint64_t>(total);
}

}  // namespace sumprod::detail
