#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "sumprod/basis_graph.hpp"

namespace sumprod {

/// (b1, b2, b) as canonical indices into B; encodes x = (b2 + b)/(b1 + b).
struct RatioWitness {
    std::size_t b1 = 0;
    std::size_t b2 = 0;
    std::size_t b = 0;
};

/// The popular-ratio set R with the counts of its Cauchy-Schwarz chain.
///
/// R = { (b2 + b)/(b1 + b) : (b1, b2) rich in B' x B', b in N(b1) ∩ N(b2) },
/// n(x) counts generating triples and Q counts sextuples of B^6 with equal
/// ratios. Q skips triples whose denominator b1 + b vanishes; since B^3 also
/// contains non-edges this can happen even when 0 is not in A, and
/// `skipped_triples` records it.
template <FieldValue F>
struct PopDiffCertificate {
    ArithSet<F> ratios;
    std::vector<std::uint64_t> multiplicity;  // n(x), aligned with ratios
    std::vector<RatioWitness> witnesses;      // first generating triple per x
    std::vector<std::size_t> subset;          // B' as indices into B
    std::uint64_t tau = 0;
    std::uint64_t rich_pairs = 0;
    std::uint64_t triple_count = 0;           // Σ over rich pairs of |N ∩ N|
    std::uint64_t multiplicity_sum = 0;       // Σ n(x)
    mpz_class collisions;                     // Q
    std::uint64_t skipped_triples = 0;
    mpz_class cs_lhs;                         // (Σ n(x))^2
    mpz_class cs_rhs;                         // |R| Q
    bool conservation_holds = false;
    bool cauchy_schwarz_holds = false;
    bool subset_of_ratio_set = false;         // R ⊆ A/A

    std::uint64_t multiplicity_of(const F& x) const {
        const std::size_t k = ratios.index_of(x);
        return k == ratios.size() ? 0 : multiplicity[k];
    }
};

template <FieldValue F>
PopDiffCertificate<F> build_popular_ratios(const ContainmentGraph<F>& g, const ArithSet<F>& subset,
                                           std::uint64_t tau, const Limits& limits = {}) {
    if (tau < 1) throw PreconditionError("richness threshold must be >= 1");
    const auto idx = g.indices_of(subset);
    const auto& b = g.basis();
    const auto ctx = b.context();
    PopDiffCertificate<F> cert;
    cert.tau = tau;
    cert.subset = idx;

    std::unordered_map<F, std::pair<std::uint64_t, RatioWitness>> counts;
    for (std::size_t i : idx) {
        for (std::size_t j : idx) {
            if (i == j) continue;
            const std::size_t common = g.common_neighbors(i, j);
            if (common < tau) continue;
            ++cert.rich_pairs;
            cert.triple_count += common;
            g.neighbors(i).for_each_common(g.neighbors(j), [&](std::size_t k) {
                const F den = b[i] + b[k];
                if (den.is_zero()) throw DivisionByZero("denominator b1 + b vanished: 0 is in A");
                const F x = (b[j] + b[k]) / den;
                auto [it, inserted] = counts.try_emplace(x, 0, RatioWitness{i, j, k});
                ++it->second.first;
            });
        }
    }

    std::vector<F> xs;
    xs.reserve(counts.size());
    for (const auto& [x, entry] : counts) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    for (const F& x : xs) {
        const auto& entry = counts.at(x);
        cert.multiplicity.push_back(entry.first);
        cert.witnesses.push_back(entry.second);
        cert.multiplicity_sum += entry.first;
    }
    cert.ratios = ArithSet<F>::from_sorted_unique(std::move(xs), ctx);

    const std::size_t n = b.size();
    check_ceiling(n * n * n, limits.max_elements, "collision count over B^3");
    std::unordered_map<F, std::uint64_t> groups;
    groups.reserve(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const F den = b[i] + b[k];
            if (den.is_zero()) {
                cert.skipped_triples += n;
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) ++groups[(b[j] + b[k]) / den];
        }
    cert.collisions = 0;
    for (const auto& [x, c] : groups) cert.collisions += mpz_class(static_cast<unsigned long>(c)) * c;

    cert.conservation_holds = cert.multiplicity_sum == cert.triple_count;
    cert.cs_lhs = mpz_class(static_cast<unsigned long>(cert.multiplicity_sum)) * cert.multiplicity_sum;
    cert.cs_rhs = mpz_class(static_cast<unsigned long>(cert.ratios.size())) * cert.collisions;
    cert.cauchy_schwarz_holds = cert.cs_lhs <= cert.cs_rhs;
    const auto& a = g.target();
    cert.subset_of_ratio_set = a.contains_zero() ? false : cert.ratios.is_subset_of(ratio_set(a, a, limits));
    return cert;
}

/// #{(a1, a2) in D^2 : a1 - a2 = 1 - x}.
template <FieldValue F>
std::uint64_t solutions_1_minus_x(const F& x, const ArithSet<F>& d) {
    const F shift = F::one(d.context()) - x;
    std::uint64_t count = 0;
    for (const F& a2 : d)
        if (d.contains(a2 + shift)) ++count;
    return count;
}

/// For each x in R: how many solutions of 1 - x = a1 - a2 the generating
/// triple produces from common neighbors, against the exact count in A/A.
struct RatioSolutionReport {
    std::vector<std::uint64_t> constructive;  // per x
    std::vector<std::uint64_t> exact;         // per x, in A/A
    bool minimized_over_witnesses = false;
    std::uint64_t min_constructive = 0;
    std::uint64_t min_exact = 0;
    std::uint64_t identity_failures = 0;  // constructed pairs not in A/A or not solving the equation
    bool exact_dominates = true;
};

/// Constructive counts are witness dependent: with |R| <= 64 every
/// generating triple is considered and the minimum kept, otherwise the first
/// witness is used.
template <FieldValue F>
RatioSolutionReport ratio_solution_report(const ContainmentGraph<F>& g, const PopDiffCertificate<F>& cert,
                                          const Limits& limits = {}) {
    RatioSolutionReport rep;
    const auto& b = g.basis();
    const auto& a = g.target();
    const auto d = ratio_set(a, a, limits);
    const F one = F::one(b.context());
    const std::size_t m = cert.ratios.size();
    rep.minimized_over_witnesses = m <= 64;
    rep.constructive.assign(m, 0);
    for (std::size_t t = 0; t < m; ++t) {
        const auto& w = cert.witnesses[t];
        rep.constructive[t] = g.common_neighbors(w.b1, w.b2);
        const F den = b[w.b1] + b[w.b];
        const F target = one - cert.ratios[t];
        g.neighbors(w.b1).for_each_common(g.neighbors(w.b2), [&](std::size_t k) {
            const F a1 = (b[w.b1] + b[k]) / den;
            const F a2 = (b[w.b2] + b[k]) / den;
            if (!d.contains(a1) || !d.contains(a2) || !(a1 - a2 == target)) ++rep.identity_failures;
        });
        rep.exact.push_back(solutions_1_minus_x(cert.ratios[t], d));
    }
    if (rep.minimized_over_witnesses) {
        for (std::size_t i : cert.subset) {
            for (std::size_t j : cert.subset) {
                if (i == j) continue;
                const std::size_t common = g.common_neighbors(i, j);
                if (common < cert.tau) continue;
                g.neighbors(i).for_each_common(g.neighbors(j), [&](std::size_t k) {
                    const std::size_t t = cert.ratios.index_of((b[j] + b[k]) / (b[i] + b[k]));
                    rep.constructive[t] = std::min<std::uint64_t>(rep.constructive[t], common);
                });
            }
        }
    }
    if (m > 0) {
        rep.min_constructive = *std::min_element(rep.constructive.begin(), rep.constructive.end());
        rep.min_exact = *std::min_element(rep.exact.begin(), rep.exact.end());
    }
    for (std::size_t t = 0; t < m; ++t)
        if (rep.exact[t] < rep.constructive[t]) rep.exact_dominates = false;
    return rep;
}

/// 1 - (b2 + b)/(b1 + b) = (b1 - b2)/(b1 + b) = (b1 + b')/(b1 + b) - (b2 + b')/(b1 + b).
template <FieldValue F>
bool verify_identity_difference(const F& b1, const F& b2, const F& b, const F& b_prime) {
    const F den = b1 + b;
    if (den.is_zero()) throw DivisionByZero("b1 + b = 0");
    const F one = F::one(b1.context());
    const F lhs = one - (b2 + b) / den;
    const F middle = (b1 - b2) / den;
    const F rhs = (b1 + b_prime) / den - (b2 + b_prime) / den;
    return lhs == middle && middle == rhs;
}

/// 1 - (b1 + c)/(b2 + c) = (b2 + c')/(b2 + c) * (1 - (b1 + c')/(b2 + c')).
template <FieldValue F>
bool verify_identity_product(const F& b1, const F& b2, const F& c, const F& c_prime) {
    const F den = b2 + c;
    const F den_prime = b2 + c_prime;
    if (den.is_zero() || den_prime.is_zero()) throw DivisionByZero("b2 + c = 0 or b2 + c' = 0");
    const F one = F::one(b1.context());
    return one - (b1 + c) / den == (den_prime / den) * (one - (b1 + c_prime) / den_prime);
}

/// E_+(YX) >= N |Y| |R| together with the explicit quadruples
/// (y, yx, y a1, y a2) that witness it.
template <FieldValue F>
struct QuadrupleBoundReport {
    bool one_in_x = false;
    bool r_subset_x = false;
    bool zero_not_in_y = false;
    bool solutions_ok = false;   // every x in R has >= N solutions in X^2
    std::uint64_t min_solutions = 0;
    std::uint64_t n = 0;
    std::uint64_t energy = 0;    // E_+(YX)
    mpz_class bound;             // N |Y| |R|
    bool holds = false;
    std::uint64_t constructed = 0;
    std::uint64_t distinct = 0;
    bool quadruples_valid = false;   // additive, entries in YX
    bool quadruples_distinct = false;

    bool preconditions_hold() const { return one_in_x && r_subset_x && zero_not_in_y && solutions_ok; }
};

template <FieldValue F>
QuadrupleBoundReport<F> quadruple_lower_bound(const ArithSet<F>& y, const ArithSet<F>& x, const ArithSet<F>& r,
                                             std::uint64_t n, const Limits& limits = {}) {
    y.check_same_field(x);
    x.check_same_field(r);
    QuadrupleBoundReport<F> rep;
    const F one = F::one(x.context());
    rep.n = n;
    rep.one_in_x = x.contains(one);
    rep.r_subset_x = r.is_subset_of(x);
    rep.zero_not_in_y = !y.contains_zero();
    rep.min_solutions = r.empty() ? 0 : UINT64_MAX;
    for (const F& v : r) rep.min_solutions = std::min(rep.min_solutions, solutions_1_minus_x(v, x));
    rep.solutions_ok = r.empty() || rep.min_solutions >= n;

    const auto yx = product_set(y, x, limits);
    rep.energy = additive_energy(yx);
    rep.bound = mpz_class(static_cast<unsigned long>(n)) * y.size() * r.size();
    rep.holds = mpz_class(static_cast<unsigned long>(rep.energy)) >= rep.bound;

    if (!rep.preconditions_hold()) return rep;
    check_ceiling(n * y.size() * r.size(), limits.max_elements, "quadruple construction");
    using Quad = std::array<F, 4>;
    std::vector<Quad> quads;
    quads.reserve(n * y.size() * r.size());
    bool valid = true;
    for (const F& v : r) {
        const F shift = one - v;
        std::vector<std::pair<F, F>> sols;  // first n in canonical order of a2
        for (const F& a2 : x) {
            if (sols.size() == n) break;
            if (x.contains(a2 + shift)) sols.emplace_back(a2 + shift, a2);
        }
        for (const F& w : y) {
            for (const auto& [a1, a2] : sols) {
                Quad qd{w, w * v, w * a1, w * a2};
                valid = valid && qd[0] + qd[3] == qd[1] + qd[2];
                for (const F& e : qd) valid = valid && yx.contains(e);
                quads.push_back(std::move(qd));
            }
        }
    }
    rep.constructed = quads.size();
    std::sort(quads.begin(), quads.end());
    rep.distinct = static_cast<std::uint64_t>(std::unique(quads.begin(), quads.end()) - quads.begin());
    rep.quadruples_valid = valid;
    rep.quadruples_distinct = rep.distinct == rep.constructed;
    return rep;
}

/// X = {(b1 + c)/(b2 + c)} and Y = {(c1 + b)/(c2 + b)} without the
/// degenerate values 0 and 1; tuples with a vanishing denominator are
/// skipped. Witnesses are the lexicographically first generating tuples.
template <FieldValue F>
struct RatioSets {
    ArithSet<F> x;
    ArithSet<F> y;
    std::vector<std::array<F, 3>> x_witness;  // (b1, b2, c)
    std::vector<std::array<F, 3>> y_witness;  // (c1, c2, b)
    std::uint64_t skipped_x = 0;
    std::uint64_t skipped_y = 0;
};

namespace detail {

template <FieldValue F>
void collect_ratios(const ArithSet<F>& outer, const ArithSet<F>& shifts, ArithSet<F>& values,
                    std::vector<std::array<F, 3>>& witnesses, std::uint64_t& skipped) {
    const F one = F::one(outer.context());
    std::unordered_map<F, std::array<F, 3>> first;
    for (const F& u1 : outer)
        for (const F& u2 : outer)
            for (const F& s : shifts) {
                const F den = u2 + s;
                if (den.is_zero()) {
                    ++skipped;
                    continue;
                }
                const F v = (u1 + s) / den;
                if (v.is_zero() || v == one) continue;
                first.try_emplace(v, std::array<F, 3>{u1, u2, s});
            }
    std::vector<F> keys;
    keys.reserve(first.size());
    for (const auto& [v, w] : first) keys.push_back(v);
    std::sort(keys.begin(), keys.end());
    for (const F& v : keys) witnesses.push_back(first.at(v));
    values = ArithSet<F>::from_sorted_unique(std::move(keys), outer.context());
}

}  // namespace detail

template <FieldValue F>
RatioSets<F> build_ratio_sets(const ArithSet<F>& b, const ArithSet<F>& c) {
    b.check_same_field(c);
    if (b.size() < 2 || c.size() < 2) throw PreconditionError("ratio sets need |B|, |C| >= 2");
    RatioSets<F> out{ArithSet<F>(b.context()), ArithSet<F>(b.context()), {}, {}, 0, 0};
    detail::collect_ratios(b, c, out.x, out.x_witness, out.skipped_x);
    detail::collect_ratios(c, b, out.y, out.y_witness, out.skipped_y);
    return out;
}

/// Energy of AA/A against the ratio sets of a decomposition A = B + C.
template <FieldValue F>
struct RatioEnergyReport {
    std::uint64_t a_size = 0, b_size = 0, c_size = 0, x_size = 0, y_size = 0;
    std::uint64_t energy = 0;  // E_+(AA/A)
    mpz_class x_product;       // |A||X||C|
    mpz_class y_product;       // |A||Y||B|
    bool holds_x = false;
    bool holds_y = false;
    // min over x in X of #{(y, x*) in Y x X : 1 - x = y (1 - x*)}
    std::uint64_t min_solutions = 0;
    bool min_solutions_at_least_c = false;
    std::uint64_t identity_failures = 0;  // over all (x witness, c')
};

template <FieldValue F>
RatioEnergyReport<F> ratio_energy_from_decomposition(const ArithSet<F>& a, const ArithSet<F>& b,
                                                     const ArithSet<F>& c, const Limits& limits = {}) {
    if (!(sumset(b, c, limits) == a)) throw PreconditionError("A is not B + C");
    if (a.contains_zero()) throw PreconditionError("0 in A");
    const auto xy = build_ratio_sets(b, c);
    RatioEnergyReport<F> rep;
    rep.a_size = a.size();
    rep.b_size = b.size();
    rep.c_size = c.size();
    rep.x_size = xy.x.size();
    rep.y_size = xy.y.size();
    rep.energy = additive_energy(aa_over_a(a, limits));
    rep.x_product = mpz_class(static_cast<unsigned long>(rep.a_size)) * rep.x_size * rep.c_size;
    rep.y_product = mpz_class(static_cast<unsigned long>(rep.a_size)) * rep.y_size * rep.b_size;
    const mpz_class e = static_cast<unsigned long>(rep.energy);
    rep.holds_x = e >= rep.x_product;
    rep.holds_y = e >= rep.y_product;

    check_ceiling(xy.x.size() * xy.y.size(), limits.max_line_pairs, "ratio-set solution scan");
    const F one = F::one(a.context());
    rep.min_solutions = xy.x.empty() ? 0 : UINT64_MAX;
    for (std::size_t t = 0; t < xy.x.size(); ++t) {
        const F& v = xy.x[t];
        std::uint64_t count = 0;
        for (const F& w : xy.y)
            if (xy.x.contains(one - (one - v) / w)) ++count;
        rep.min_solutions = std::min(rep.min_solutions, count);
        const auto& [b1, b2, c0] = xy.x_witness[t];
        for (const F& cp : c) {
            if ((b2 + cp).is_zero()) continue;
            if (!verify_identity_product(b1, b2, c0, cp)) ++rep.identity_failures;
        }
    }
    rep.min_solutions_at_least_c = rep.min_solutions >= rep.c_size;
    return rep;
}

}  // namespace sumprod
