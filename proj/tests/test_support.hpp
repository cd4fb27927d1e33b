#pragma once

// Generators and brute-force oracles shared by the test suites. Oracles
// here deliberately avoid the library's algorithms: they enumerate tuples
// directly over plain vectors.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "sumprod/arith_set.hpp"

namespace sumprod::testing {

inline RationalSet random_int_set(std::mt19937_64& rng, std::size_t n, long long lo, long long hi) {
    std::uniform_int_distribution<long long> dist(lo, hi);
    std::set<long long> picked;
    while (picked.size() < n) picked.insert(dist(rng));
    std::vector<Rational> out(picked.begin(), picked.end());
    return RationalSet(std::move(out));
}

inline RationalSet random_rational_set(std::mt19937_64& rng, std::size_t n, long long range, long long max_den) {
    std::uniform_int_distribution<long long> num(-range, range);
    std::uniform_int_distribution<long long> den(1, max_den);
    std::vector<Rational> out;
    while (true) {
        out.push_back(Rational(mpz_class(static_cast<long>(num(rng))), mpz_class(static_cast<long>(den(rng)))));
        RationalSet s(out);
        if (s.size() == n) return s;
    }
}

template <class T>
std::vector<T> as_vector(const ArithSet<T>& s) {
    return {s.begin(), s.end()};
}

template <class T>
std::uint64_t brute_additive_energy(const std::vector<T>& s) {
    std::uint64_t count = 0;
    for (const auto& a : s)
        for (const auto& b : s)
            for (const auto& c : s)
                for (const auto& d : s)
                    if (a + b == c + d) ++count;
    return count;
}

template <class T>
std::uint64_t brute_multiplicative_energy(const std::vector<T>& s) {
    std::uint64_t count = 0;
    for (const auto& a : s)
        for (const auto& b : s)
            for (const auto& c : s)
                for (const auto& d : s)
                    if (a * b == c * d) ++count;
    return count;
}

// Ordered triples of pairwise-distinct collinear points P in X^2, Q in Y^2,
// R in Z^2, via the 2x2 determinant.
template <class T>
std::uint64_t brute_collinear_triples(const std::vector<T>& x, const std::vector<T>& y, const std::vector<T>& z) {
    struct Pt {
        T u, v;
    };
    auto grid = [](const std::vector<T>& s) {
        std::vector<Pt> g;
        for (const auto& a : s)
            for (const auto& b : s) g.push_back({a, b});
        return g;
    };
    const auto gx = grid(x), gy = grid(y), gz = grid(z);
    auto same = [](const Pt& p, const Pt& q) { return p.u == q.u && p.v == q.v; };
    std::uint64_t count = 0;
    for (const auto& p : gx)
        for (const auto& q : gy) {
            if (same(p, q)) continue;
            for (const auto& r : gz) {
                if (same(p, r) || same(q, r)) continue;
                if ((q.u - p.u) * (r.v - p.v) == (q.v - p.v) * (r.u - p.u)) ++count;
            }
        }
    return count;
}

}  // namespace sumprod::testing
