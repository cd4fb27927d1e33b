#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "sumprod/arith_set.hpp"
#include "sumprod/detail/plane.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/error.hpp"
#include "sumprod/fit.hpp"
#include "sumprod/limits.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

template <FieldValue F>
struct PlanePoint {
    F x;
    F y;
    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
    friend auto operator<=>(const PlanePoint& a, const PlanePoint& b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
};

/// Line a*x + b*y = c with the first nonzero of (a, b) equal to 1.
template <FieldValue F>
struct LineKey {
    F a;
    F b;
    F c;
    friend bool operator==(const LineKey&, const LineKey&) = default;
    friend auto operator<=>(const LineKey& l, const LineKey& r) {
        if (auto t = l.a <=> r.a; t != 0) return t;
        if (auto t = l.b <=> r.b; t != 0) return t;
        return l.c <=> r.c;
    }

    bool contains(const PlanePoint<F>& p) const { return a * p.x + b * p.y == c; }
};

template <FieldValue F>
LineKey<F> line_through(const PlanePoint<F>& p, const PlanePoint<F>& q) {
    if (p == q) throw PreconditionError("line_through: points coincide");
    F a = q.y - p.y;
    F b = p.x - q.x;
    const F lead = a.is_zero() ? b : a;
    a = a / lead;
    b = b / lead;
    return {a, b, a * p.x + b * p.y};
}

/// Whether three points lie on a common line (zero orientation determinant).
template <FieldValue F>
bool collinear(const PlanePoint<F>& p, const PlanePoint<F>& q, const PlanePoint<F>& r) {
    return (q.x - p.x) * (r.y - p.y) == (q.y - p.y) * (r.x - p.x);
}

/// Ordered triples (x, y, z) of pairwise distinct collinear points with
/// x in X*X, y in Y*Y, z in Z*Z.
template <FieldValue F>
std::uint64_t collinear_triples(const ArithSet<F>& x, const ArithSet<F>& y, const ArithSet<F>& z,
                                const Limits& limits = {}) {
    const auto grid = detail::grid_union<F>({&x, &y, &z}, limits);
    std::uint64_t total = 0;
    detail::with_plane(grid, [&](const auto& plane) {
        detail::for_each_line(plane, grid.masks, [&](const detail::ClassCounts& c) {
            total += detail::ordered_distinct_triples(c, {1, 2, 4});
        });
    });
    return total;
}

struct SextupleCount {
    std::uint64_t total = 0;          // all solutions in A^6
    std::uint64_t nondegenerate = 0;  // the three points pairwise distinct
    std::uint64_t collinear = 0;      // T(A, A, A) from the line census
    bool matches_collinear() const noexcept { return nondegenerate == collinear; }
};

/// Counts (a,a',b,b',c,c') in A^6 with (a-b)(a'-c') = (a-c)(a'-b').
///
/// The equation says P=(a,a'), Q=(b,b'), R=(c,c') are collinear. For a fixed
/// P, a pair (Q, R) solves it iff Q = P, R = P, or Q and R are in the same
/// direction class from P; that gives sum n_d^2 + 2m - 1 per anchor.
template <FieldValue F>
SextupleCount sextuple_census(const ArithSet<F>& a, const Limits& limits = {}) {
    if (a.empty()) throw PreconditionError("sextuple_census: empty set");
    const auto grid = detail::grid_union<F>({&a}, limits);
    SextupleCount out;
    detail::with_plane(grid, [&](const auto& plane) {
        const std::uint64_t m = plane.size();
        detail::scan_directions(
            plane, grid.masks,
            [&](auto& table) {
                std::uint64_t squares = 0, ordered = 0;
                table.for_each([&](const detail::LineAcc& acc) {
                    squares += acc.others * acc.others;
                    ordered += acc.others * (acc.others - 1);
                });
                out.total += squares + 2 * m - 1;
                out.nondegenerate += ordered;
            },
            [&](const detail::ClassCounts& c) { out.collinear += detail::ordered_distinct_triples(c, {1, 1, 1}); });
    });
    return out;
}

/// Richness of one line in the grids C*C and B*B, split by membership.
struct LineClass {
    std::uint32_t c_only = 0;
    std::uint32_t b_only = 0;
    std::uint32_t both = 0;
    std::uint32_t c_points() const noexcept { return c_only + both; }
    std::uint32_t b_points() const noexcept { return b_only + both; }
    friend auto operator<=>(const LineClass&, const LineClass&) = default;
};

/// Dyadic bucket index: floor(log2 k), or -1 for k = 0.
inline int dyadic_index(std::uint64_t k) noexcept {
    return k == 0 ? -1 : static_cast<int>(std::bit_width(k)) - 1;
}

struct IncidenceTable {
    std::size_t c_size = 0;
    std::size_t b_size = 0;
    // Exact census of every line with at least two points of C*C or of B*B.
    std::map<LineClass, std::uint64_t> census;
    // (i, j) -> number of lines with 2^i <= |l cap C*C| < 2^(i+1), same for j and B*B.
    std::map<std::pair<int, int>, std::uint64_t> buckets;

    std::uint64_t line_count() const {
        std::uint64_t n = 0;
        for (const auto& [cls, count] : census) n += count;
        return n;
    }

    /// T(C, C, B) expanded from the exact per-line counts.
    std::uint64_t triples() const {
        std::uint64_t total = 0;
        for (const auto& [cls, count] : census) {
            detail::ClassCounts c{};
            c[1] = cls.c_only;
            c[2] = cls.b_only;
            c[3] = cls.both;
            total += count * detail::ordered_distinct_triples(c, {1, 1, 2});
        }
        return total;
    }

    /// Sum over lines of k(k-1) with k the C*C richness; equals the number of
    /// ordered pairs of distinct points of C*C.
    std::uint64_t c_ordered_pairs() const {
        std::uint64_t total = 0;
        for (const auto& [cls, count] : census) {
            const std::uint64_t k = cls.c_points();
            total += count * k * (k - (k > 0));
        }
        return total;
    }

    std::uint64_t b_ordered_pairs() const {
        std::uint64_t total = 0;
        for (const auto& [cls, count] : census) {
            const std::uint64_t l = cls.b_points();
            total += count * l * (l - (l > 0));
        }
        return total;
    }

    /// Lines whose C*C and B*B richness are exactly k and l.
    std::uint64_t lines_with_richness(std::uint64_t k, std::uint64_t l) const {
        std::uint64_t n = 0;
        for (const auto& [cls, count] : census)
            if (cls.c_points() == k && cls.b_points() == l) n += count;
        return n;
    }
};

template <FieldValue F>
IncidenceTable dyadic_table(const ArithSet<F>& c, const ArithSet<F>& b, const Limits& limits = {}) {
    if (c.size() < 2 && b.size() < 2) throw PreconditionError("dyadic_table: both grids have fewer than 2 points");
    const auto grid = detail::grid_union<F>({&c, &b}, limits);
    IncidenceTable table;
    table.c_size = c.size();
    table.b_size = b.size();
    detail::with_plane(grid, [&](const auto& plane) {
        detail::for_each_line(plane, grid.masks, [&](const detail::ClassCounts& counts) {
            const LineClass cls{static_cast<std::uint32_t>(counts[1]), static_cast<std::uint32_t>(counts[2]),
                                static_cast<std::uint32_t>(counts[3])};
            if (cls.c_points() < 2 && cls.b_points() < 2) return;
            ++table.census[cls];
        });
    });
    for (const auto& [cls, count] : table.census)
        table.buckets[{dyadic_index(cls.c_points()), dyadic_index(cls.b_points())}] += count;
    return table;
}

struct BucketBound {
    int i = 0;
    int j = 0;
    std::uint64_t lines = 0;        // |L_ij|
    std::uint64_t exact_lines = 0;  // lines with richness exactly (2^i, 2^j)
    Rational bound;                 // min(|C|^4/k^3 + |C|^2/k, |B|^4/l^3 + |B|^2/l)
    Rational ratio;                 // lines / bound
    Rational exact_ratio;           // exact_lines / bound
};

struct LineBoundReport {
    std::vector<BucketBound> buckets;  // every (i, j) with i, j >= 1
    Rational max_ratio;
};

/// Compares each dyadic bucket with the incidence bound for k-rich and
/// l-rich lines (k = 2^i, l = 2^j, both at least 2). Empty buckets are
/// reported with ratio 0.
inline LineBoundReport st_line_bound_check(const IncidenceTable& table) {
    LineBoundReport report;
    int max_i = 0, max_j = 0;
    for (const auto& [key, count] : table.buckets) {
        max_i = std::max(max_i, key.first);
        max_j = std::max(max_j, key.second);
    }
    const Rational cs(static_cast<long long>(table.c_size));
    const Rational bs(static_cast<long long>(table.b_size));
    auto rich_bound = [](const Rational& n, const Rational& k) { return n * n * n * n / (k * k * k) + n * n / k; };
    for (int i = 1; i <= max_i; ++i) {
        for (int j = 1; j <= max_j; ++j) {
            BucketBound entry;
            entry.i = i;
            entry.j = j;
            if (auto it = table.buckets.find({i, j}); it != table.buckets.end()) entry.lines = it->second;
            const Rational k(1LL << i), l(1LL << j);
            entry.exact_lines = table.lines_with_richness(1ULL << i, 1ULL << j);
            entry.bound = std::min(rich_bound(cs, k), rich_bound(bs, l));
            entry.ratio = Rational(static_cast<long long>(entry.lines)) / entry.bound;
            entry.exact_ratio = Rational(static_cast<long long>(entry.exact_lines)) / entry.bound;
            report.max_ratio = std::max(report.max_ratio, entry.ratio);
            report.buckets.push_back(std::move(entry));
        }
    }
    return report;
}

struct TripleBoundReport {
    std::size_t c_size = 0;
    std::size_t b_size = 0;
    std::uint64_t triples = 0;
    HighPrecision bound = 0;   // |B|^(4/3) |C|^(8/3) ln^2 |B|
    double ratio = 0;
    bool hypothesis_ok = false;  // |B| >= |C| >= 2
};

inline HighPrecision triple_bound_value(std::size_t c_size, std::size_t b_size) {
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    const HighPrecision b = static_cast<double>(b_size);
    const HighPrecision c = static_cast<double>(c_size);
    HighPrecision log_sq = b_size > 1 ? HighPrecision(log(b) * log(b)) : HighPrecision(1);
    return pow(b, HighPrecision(4) / 3) * pow(c, HighPrecision(8) / 3) * log_sq;
}

/// Exact T(C, C, B) against |B|^(4/3)|C|^(8/3) log^2|B|. A violated
/// hypothesis is flagged, not thrown.
template <FieldValue F>
TripleBoundReport collinear_triple_bound_check(const ArithSet<F>& c, const ArithSet<F>& b, const Limits& limits = {}) {
    TripleBoundReport r;
    r.c_size = c.size();
    r.b_size = b.size();
    r.hypothesis_ok = b.size() >= c.size() && c.size() >= 2;
    r.triples = collinear_triples(c, c, b, limits);
    r.bound = triple_bound_value(c.size(), b.size());
    r.ratio = r.bound > 0 ? static_cast<double>(HighPrecision(r.triples) / r.bound) : 0.0;
    return r;
}

struct TripleBoundFamily {
    std::vector<TripleBoundReport> reports;
    LogLogFit slope;  // log T against log |B|
};

template <FieldValue F>
TripleBoundFamily collinear_triple_bound_family(const ArithSet<F>& c, const std::vector<ArithSet<F>>& bs, const Limits& limits = {}) {
    TripleBoundFamily fam;
    std::vector<double> xs, ys;
    for (const auto& b : bs) {
        fam.reports.push_back(collinear_triple_bound_check(c, b, limits));
        xs.push_back(static_cast<double>(b.size()));
        ys.push_back(static_cast<double>(fam.reports.back().triples));
    }
    fam.slope = fit_loglog(xs, ys);
    return fam;
}

}  // namespace sumprod
