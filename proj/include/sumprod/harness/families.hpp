#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sumprod/arith_set.hpp"
#include "sumprod/error.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/residue.hpp"
#include "sumprod/set_io.hpp"
#include "sumprod/set_ops.hpp"

namespace sumprod::harness {

enum class FamilyKind { gp, ap, subgroup, random, sumset_of_random, plus_minus };

inline const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::gp: return "gp";
        case FamilyKind::ap: return "ap";
        case FamilyKind::subgroup: return "subgroup";
        case FamilyKind::random: return "random";
        case FamilyKind::sumset_of_random: return "sumset-of-random";
        case FamilyKind::plus_minus: return "plus-minus";
    }
    return "?";
}

inline FamilyKind parse_family_kind(std::string_view s) {
    for (auto k : {FamilyKind::gp, FamilyKind::ap, FamilyKind::subgroup, FamilyKind::random,
                   FamilyKind::sumset_of_random, FamilyKind::plus_minus})
        if (s == to_string(k)) return k;
    throw ParseError("unknown family kind '" + std::string(s) + "'");
}

struct FamilySpec {
    FamilyKind kind = FamilyKind::gp;
    std::size_t n = 8;
    Rational q{2};           // gp ratio
    Rational a{0};           // ap start
    Rational d{1};           // ap step
    std::uint64_t p = 0;     // subgroup prime
    std::uint64_t order = 0; // subgroup order
    std::optional<std::uint64_t> seed;
    long long lo = 1;
    long long hi = 1'000'000'000;
    bool minus = false;      // plus-minus: B - B instead of B + B

    // Canonical text form, parseable by parse_family.
    std::string str() const {
        std::ostringstream os;
        os << to_string(kind) << ':';
        switch (kind) {
            case FamilyKind::gp: os << "q=" << q.str() << ",n=" << n; break;
            case FamilyKind::ap: os << "a=" << a.str() << ",d=" << d.str() << ",n=" << n; break;
            case FamilyKind::subgroup: os << "p=" << p << ",order=" << order; break;
            case FamilyKind::random:
            case FamilyKind::sumset_of_random:
            case FamilyKind::plus_minus:
                os << "n=" << n << ",lo=" << lo << ",hi=" << hi;
                if (kind == FamilyKind::plus_minus) os << ",sign=" << (minus ? "minus" : "plus");
                if (seed) os << ",seed=" << *seed;
                break;
        }
        return os.str();
    }
};

/// Parses "kind:key=value,..." where a value list "8|16|32" expands into
/// one spec per entry (only one key may carry a list).
inline std::vector<FamilySpec> parse_family(std::string_view text, std::optional<std::uint64_t> default_seed = {}) {
    const auto colon = text.find(':');
    FamilySpec base;
    base.kind = parse_family_kind(text.substr(0, colon));
    base.seed = default_seed;
    std::string list_key;
    std::vector<std::string> list_values;
    auto assign = [&](FamilySpec& s, const std::string& key, const std::string& value) {
        auto u64 = [&] {
            try {
                std::size_t pos = 0;
                const auto v = std::stoull(value, &pos);
                if (pos != value.size()) throw ParseError("");
                return static_cast<std::uint64_t>(v);
            } catch (const std::exception&) {
                throw ParseError("family: bad integer '" + value + "' for " + key);
            }
        };
        auto i64 = [&] {
            try {
                std::size_t pos = 0;
                const auto v = std::stoll(value, &pos);
                if (pos != value.size()) throw ParseError("");
                return v;
            } catch (const std::exception&) {
                throw ParseError("family: bad integer '" + value + "' for " + key);
            }
        };
        if (key == "n") s.n = u64();
        else if (key == "q") s.q = Rational::parse(value);
        else if (key == "a") s.a = Rational::parse(value);
        else if (key == "d") s.d = Rational::parse(value);
        else if (key == "p") s.p = u64();
        else if (key == "order") s.order = u64();
        else if (key == "seed") s.seed = u64();
        else if (key == "lo") s.lo = i64();
        else if (key == "hi") s.hi = i64();
        else if (key == "sign") {
            if (value != "plus" && value != "minus") throw ParseError("family: sign must be plus or minus");
            s.minus = value == "minus";
        } else {
            throw ParseError("family: unknown key '" + key + "'");
        }
    };
    if (colon != std::string_view::npos) {
        std::string rest(text.substr(colon + 1));
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ParseError("family: expected key=value, got '" + item + "'");
            const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
            if (value.find('|') != std::string::npos) {
                if (!list_key.empty()) throw ParseError("family: only one key may list values");
                list_key = key;
                std::stringstream vs(value);
                std::string v;
                while (std::getline(vs, v, '|')) list_values.push_back(v);
            } else {
                assign(base, key, value);
            }
        }
    }
    if (list_key.empty()) return {base};
    std::vector<FamilySpec> out;
    for (const auto& v : list_values) {
        FamilySpec s = base;
        assign(s, list_key, v);
        out.push_back(s);
    }
    return out;
}

namespace detail {

// Uniform draw in [lo, hi] by rejection, so the sequence depends only on
// the mt19937_64 stream (std distributions differ between libraries).
inline long long uniform_draw(std::mt19937_64& rng, long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long long>(rng());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return lo + static_cast<long long>(x % span);
}

inline RationalSet random_distinct(std::size_t n, long long lo, long long hi, std::uint64_t seed) {
    if (hi < lo || static_cast<std::uint64_t>(hi - lo) + 1 < n)
        throw PreconditionError("random family: range smaller than n");
    std::mt19937_64 rng(seed);
    std::vector<long long> picked;
    std::unordered_set<long long> seen;
    while (picked.size() < n) {
        const long long v = uniform_draw(rng, lo, hi);
        if (seen.insert(v).second) picked.push_back(v);
    }
    std::vector<Rational> out(picked.begin(), picked.end());
    return RationalSet(std::move(out));
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f) continue;
        out.push_back(f);
        while (n % f == 0) n /= f;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

/// Least g whose multiplicative order mod p is p - 1.
inline std::uint64_t least_primitive_root(std::uint64_t p) {
    if (!is_prime(p)) throw PreconditionError("least_primitive_root: modulus is not prime");
    if (p == 2) return 1;
    const auto factors = detail::prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto f : factors)
            if (sumprod::detail::pow_mod(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw PreconditionError("no primitive root found");
}

/// Deterministic set for a FamilySpec; random kinds require a seed.
inline AnySet generate(const FamilySpec& s) {
    auto need_seed = [&] {
        if (!s.seed) throw PreconditionError(std::string("family ") + to_string(s.kind) + " requires a seed");
        return *s.seed;
    };
    switch (s.kind) {
        case FamilyKind::gp: {
            if (s.q.is_zero() || s.q == Rational(1) || s.q == Rational(-1))
                throw PreconditionError("gp: ratio must not be 0 or +-1");
            std::vector<Rational> v;
            Rational x(1);
            for (std::size_t i = 0; i < s.n; ++i, x *= s.q) v.push_back(x);
            return RationalSet(v);
        }
        case FamilyKind::ap: {
            if (s.d.is_zero() && s.n > 1) throw PreconditionError("ap: step must be nonzero");
            std::vector<Rational> v;
            for (std::size_t i = 0; i < s.n; ++i) v.push_back(s.a + s.d * Rational(static_cast<long long>(i)));
            return RationalSet(v);
        }
        case FamilyKind::subgroup: {
            if (!is_prime(s.p)) throw PreconditionError("subgroup: p must be prime");
            if (s.order == 0 || (s.p - 1) % s.order != 0) throw PreconditionError("subgroup: order must divide p - 1");
            const PrimeField f(s.p);
            const std::uint64_t g = least_primitive_root(s.p);
            const std::uint64_t h = sumprod::detail::pow_mod(g, (s.p - 1) / s.order, s.p);
            std::vector<Residue> v;
            std::uint64_t x = 1;
            for (std::uint64_t i = 0; i < s.order; ++i) {
                v.emplace_back(static_cast<long long>(x), f);
                x = sumprod::detail::mul_mod(x, h, s.p);
            }
            return ResidueSet(v, f);
        }
        case FamilyKind::random: return detail::random_distinct(s.n, s.lo, s.hi, need_seed());
        case FamilyKind::sumset_of_random: {
            const auto r = detail::random_distinct(s.n, s.lo, s.hi, need_seed());
            return sumset(r, r);
        }
        case FamilyKind::plus_minus: {
            const auto b = detail::random_distinct(s.n, s.lo, s.hi, need_seed());
            return s.minus ? difference_set(b, b) : sumset(b, b);
        }
    }
    throw PreconditionError("unknown family");
}

}  // namespace sumprod::harness
