#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sumprod/detail/bitset.hpp"
#include "sumprod/energy.hpp"

namespace sumprod {

/// Graph on B (both sides of the bipartition) with an edge (b1, b2) iff
/// b1 + b2 lies in the target set A. Ordered pairs throughout; a loop (b, b)
/// is an edge when 2b is in A.
template <FieldValue F>
class ContainmentGraph {
public:
    ContainmentGraph(ArithSet<F> basis, ArithSet<F> target)
        : basis_(std::move(basis)), target_(std::move(target)) {
        basis_.check_same_field(target_);
        if (basis_.empty() || target_.empty()) throw PreconditionError("containment graph needs nonempty B and A");
        const std::size_t n = basis_.size();
        adjacency_.assign(n, detail::Bitset(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                if (target_.contains(basis_[i] + basis_[j])) {
                    adjacency_[i].set(j);
                    adjacency_[j].set(i);
                    edges_ += (i == j) ? 1 : 2;
                }
            }
        }
        degrees_.resize(n);
        for (std::size_t i = 0; i < n; ++i) degrees_[i] = adjacency_[i].count();
    }

    const ArithSet<F>& basis() const noexcept { return basis_; }
    const ArithSet<F>& target() const noexcept { return target_; }
    std::size_t order() const noexcept { return basis_.size(); }
    std::uint64_t edge_count() const noexcept { return edges_; }

    bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i].test(j); }
    const detail::Bitset& neighbors(std::size_t i) const { return adjacency_[i]; }
    std::size_t degree(std::size_t i) const { return degrees_[i]; }

    std::vector<std::size_t> neighbor_list(std::size_t i) const {
        std::vector<std::size_t> out;
        adjacency_[i].for_each([&](std::size_t j) { out.push_back(j); });
        return out;
    }

    std::size_t common_neighbors(std::size_t i, std::size_t j) const {
        return adjacency_[i].intersection_count(adjacency_[j]);
    }

    /// e / |B|^2.
    Rational density() const {
        const mpz_class n = static_cast<unsigned long>(order());
        return Rational(mpz_class(static_cast<unsigned long>(edges_)), n * n);
    }

    /// Canonical indices of a subset of B; throws if it is not a subset.
    std::vector<std::size_t> indices_of(const ArithSet<F>& subset) const {
        std::vector<std::size_t> out;
        out.reserve(subset.size());
        for (const F& x : subset) {
            const std::size_t k = basis_.index_of(x);
            if (k == basis_.size()) throw PreconditionError("subset element " + x.str() + " is not in B");
            out.push_back(k);
        }
        return out;
    }

private:
    ArithSet<F> basis_;
    ArithSet<F> target_;
    std::vector<detail::Bitset> adjacency_;
    std::vector<std::size_t> degrees_;
    std::uint64_t edges_ = 0;
};

template <FieldValue F>
ContainmentGraph<F> build_containment_graph(const ArithSet<F>& basis, const ArithSet<F>& target) {
    return ContainmentGraph<F>(basis, target);
}

/// How B sits as a basis for A: |B| = K|A|^{1/2} and e = |A|/L.
///
/// K is irrational in general, so it is carried exactly through K^2.
struct LKProfile {
    std::uint64_t basis_size = 0;
    std::uint64_t target_size = 0;
    std::uint64_t edges = 0;
    bool covers_target = false;  // A ⊆ B + B

    Rational k_squared() const {
        return Rational(mpz_class(static_cast<unsigned long>(basis_size)) * basis_size,
                        mpz_class(static_cast<unsigned long>(target_size)));
    }
    Rational l() const {
        return Rational(mpz_class(static_cast<unsigned long>(target_size)), mpz_class(static_cast<unsigned long>(edges)));
    }
    Rational density() const {
        return Rational(mpz_class(static_cast<unsigned long>(edges)),
                        mpz_class(static_cast<unsigned long>(basis_size)) * basis_size);
    }
    double k() const { return std::sqrt(k_squared().to_double()); }

    /// L^{-2} K^{-3} |A|^{1/2}, which simplifies to e^2 / |B|^3.
    Rational richness_scale() const {
        const mpz_class e = static_cast<unsigned long>(edges);
        const mpz_class b = static_cast<unsigned long>(basis_size);
        return Rational(e * e, b * b * b);
    }
};

template <FieldValue F>
LKProfile lk_profile(const ContainmentGraph<F>& g) {
    if (g.edge_count() == 0) throw PreconditionError("no pair of B sums into A (e = 0)");
    LKProfile p;
    p.basis_size = g.order();
    p.target_size = g.target().size();
    p.edges = g.edge_count();
    p.covers_target = std::all_of(g.target().begin(), g.target().end(), [&](const F& a) {
        for (const F& b : g.basis())
            if (g.basis().contains(a - b)) return true;
        return false;
    });
    return p;
}

/// Default richness threshold: ceil(L^{-2} K^{-3} |A|^{1/2}), at least 1.
inline std::uint64_t default_richness_threshold(const LKProfile& p) {
    const Rational scale = p.richness_scale();
    const mpq_class& q = scale.value();
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return std::max<std::uint64_t>(1, c.get_ui());
}

/// Outcome of the pivot-neighborhood search for a subset in which almost
/// all ordered pairs share many common neighbors.
template <FieldValue F>
struct GowersExtract {
    std::size_t pivot = 0;
    std::vector<std::size_t> subset;  // indices into B
    ArithSet<F> subset_set;
    Rational epsilon;
    Rational threshold;     // eps * alpha^2 * |B| / 2
    std::uint64_t bad_pairs = 0;
    Rational bad_fraction;  // bad_pairs / |B'|^2
    bool size_ok = false;   // |B'| >= alpha |B| / 2
    bool fraction_ok = false;
    bool success = false;
};

/// Scans every pivot v, takes B' = N(v) and measures the fraction of
/// ordered pairs of B' x B' (diagonal included) whose common neighborhood is
/// below eps * alpha^2 * |B| / 2. Returns the largest qualifying candidate,
/// else the one with the smallest bad fraction with success = false. Ties go
/// to the earlier pivot.
template <FieldValue F>
GowersExtract<F> gowers_extract(const ContainmentGraph<F>& g, const Rational& epsilon) {
    if (!(epsilon > Rational(0) && epsilon < Rational(1))) throw PreconditionError("epsilon must lie in (0, 1)");
    if (g.edge_count() == 0) throw PreconditionError("gowers extraction needs e >= 1");
    const std::size_t n = g.order();
    const Rational alpha = g.density();
    const Rational n_r = Rational(static_cast<long long>(n));
    const Rational threshold = epsilon * alpha * alpha * n_r / Rational(2);
    const Rational min_size = alpha * n_r / Rational(2);

    std::vector<std::size_t> common(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) common[i * n + j] = common[j * n + i] = g.common_neighbors(i, j);

    std::optional<GowersExtract<F>> best_ok;
    std::optional<GowersExtract<F>> best_any;
    for (std::size_t v = 0; v < n; ++v) {
        if (g.degree(v) == 0) continue;
        GowersExtract<F> cand;
        cand.pivot = v;
        cand.subset = g.neighbor_list(v);
        cand.epsilon = epsilon;
        cand.threshold = threshold;
        for (std::size_t i : cand.subset)
            for (std::size_t j : cand.subset)
                if (Rational(static_cast<long long>(common[i * n + j])) < threshold) ++cand.bad_pairs;
        const auto m = static_cast<long long>(cand.subset.size());
        cand.bad_fraction = Rational(static_cast<long long>(cand.bad_pairs)) / Rational(m * m);
        cand.size_ok = Rational(m) >= min_size;
        cand.fraction_ok = cand.bad_fraction <= epsilon;
        cand.success = cand.size_ok && cand.fraction_ok;
        if (cand.success && (!best_ok || cand.subset.size() > best_ok->subset.size())) best_ok = cand;
        if (!best_any || cand.bad_fraction < best_any->bad_fraction) best_any = cand;
    }
    GowersExtract<F> out = best_ok ? *best_ok : *best_any;
    std::vector<F> elems;
    for (std::size_t i : out.subset) elems.push_back(g.basis()[i]);
    out.subset_set = ArithSet<F>::from_sorted_unique(std::move(elems), g.basis().context());
    return out;
}

struct RichPair {
    std::size_t first = 0;
    std::size_t second = 0;
    std::size_t common = 0;  // |N(b1) ∩ N(b2)|
};

/// Off-diagonal ordered pairs with at least tau common neighbors, in
/// lexicographic index order.
template <FieldValue F>
std::vector<RichPair> rich_pairs(const ContainmentGraph<F>& g, std::uint64_t tau) {
    if (tau < 1) throw PreconditionError("richness threshold must be >= 1");
    std::vector<RichPair> out;
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = 0; j < g.order(); ++j) {
            if (i == j) continue;
            const std::size_t c = g.common_neighbors(i, j);
            if (c >= tau) out.push_back({i, j, c});
        }
    return out;
}

struct DifferenceRepresentationReport {
    std::uint64_t pairs = 0;
    std::uint64_t pairs_at_least_tau = 0;
    Rational fraction_at_least_tau;
    std::uint64_t min_count = 0;
    std::uint64_t median_count = 0;   // lower median
    std::uint64_t injection_violations = 0;
    bool injection_holds = true;
};

/// For every ordered pair of B' x B', counts (a, a') in A^2 with
/// b1 - b2 = a - a' and checks that this is at least |N(b1) ∩ N(b2)|: every
/// common neighbor b yields the distinct solution (b + b1, b + b2).
template <FieldValue F>
DifferenceRepresentationReport verify_difference_representations(const ContainmentGraph<F>& g,
                                                                   const ArithSet<F>& subset, std::uint64_t tau) {
    const auto idx = g.indices_of(subset);
    const auto diffs = representation_function(g.target(), g.target(), BinaryOp::minus);
    DifferenceRepresentationReport rep;
    std::vector<std::uint64_t> counts;
    counts.reserve(idx.size() * idx.size());
    for (std::size_t i : idx) {
        for (std::size_t j : idx) {
            const auto it = diffs.find(g.basis()[i] - g.basis()[j]);
            const std::uint64_t count = it == diffs.end() ? 0 : it->second;
            counts.push_back(count);
            if (count >= tau) ++rep.pairs_at_least_tau;
            if (count < g.common_neighbors(i, j)) ++rep.injection_violations;
        }
    }
    rep.pairs = counts.size();
    rep.injection_holds = rep.injection_violations == 0;
    if (!counts.empty()) {
        std::sort(counts.begin(), counts.end());
        rep.min_count = counts.front();
        rep.median_count = counts[(counts.size() - 1) / 2];
        rep.fraction_at_least_tau = Rational(static_cast<long long>(rep.pairs_at_least_tau)) /
                                    Rational(static_cast<long long>(rep.pairs));
    }
    return rep;
}

}  // namespace sumprod
