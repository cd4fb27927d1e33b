#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_set>
#include <unordered_map>
#include <vector>

#include "sumprod/arith_set.hpp"
#include "sumprod/basis_graph.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/error.hpp"
#include "sumprod/limits.hpp"
#include "sumprod/set_ops.hpp"

namespace sumprod {

/// Smallest n with n(n+1)/2 >= |A|.
inline std::size_t basis_counting_bound(std::size_t target_size) {
    std::size_t n = 0;
    while (n * (n + 1) / 2 < target_size) ++n;
    return n;
}

/// (A + A - A) together with {a/2 : a in A}.
inline RationalSet default_basis_universe(const RationalSet& a, const Limits& limits = {}) {
    const auto sums = sumset(a, a, limits);
    auto u = difference_set(sums, a, limits);
    std::vector<Rational> halves;
    for (const auto& x : a) halves.push_back(x / Rational(2));
    return set_union(u, RationalSet(halves));
}

inline std::size_t default_basis_cap(std::size_t target_size) {
    return static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(static_cast<double>(target_size)))) + 4;
}

enum class BasisStatus { optimal, infeasible, node_limit };

inline const char* to_string(BasisStatus s) {
    switch (s) {
        case BasisStatus::optimal: return "optimal";
        case BasisStatus::infeasible: return "infeasible_within_universe";
        case BasisStatus::node_limit: return "node_limit";
    }
    return "?";
}

struct BasisOptions {
    std::optional<RationalSet> universe;
    std::optional<std::size_t> size_cap;
    std::uint64_t node_limit = 0;  // 0 = unlimited
    Limits limits;
};

struct BasisSearchResult {
    BasisStatus status = BasisStatus::infeasible;
    RationalSet basis;  // empty unless a basis was found
    std::size_t counting_lower_bound = 0;
    std::size_t size_cap = 0;
    std::uint64_t nodes = 0;
    RationalSet universe;

    bool found() const noexcept { return !basis.empty(); }
    bool proven_optimal() const noexcept { return status == BasisStatus::optimal; }
    std::size_t size() const noexcept { return basis.size(); }
};

namespace detail {

class BasisSearch {
public:
    BasisSearch(const RationalSet& target, const RationalSet& universe, std::size_t cap, std::uint64_t node_limit)
        : universe_(universe), node_limit_(node_limit), best_size_(cap + 1), counting_(basis_counting_bound(target.size())) {
        chosen_.assign(universe.size(), 0);
        std::mt19937_64 keys(0x5eedULL);
        zobrist_.resize(universe.size());
        for (auto& z : zobrist_) z = {keys(), keys()};
        gain_.assign(universe.size(), 0);
        seen_.assign(universe.size(), 0);
        pairs_.resize(target.size());
        for (std::size_t t = 0; t < target.size(); ++t) {
            for (std::size_t i = 0; i < universe.size(); ++i) {
                const Rational rest = target[t] - universe[i];
                if (rest < universe[i]) break;
                const std::size_t j = universe.index_of(rest);
                if (j != universe.size()) pairs_[t].push_back({i, j});
            }
        }
    }

    void run() {
        greedy();
        std::vector<std::size_t> uncovered(pairs_.size());
        for (std::size_t t = 0; t < uncovered.size(); ++t) uncovered[t] = t;
        dfs(uncovered);
    }

    bool aborted() const noexcept { return aborted_; }
    std::uint64_t nodes() const noexcept { return nodes_; }
    const std::optional<std::vector<std::size_t>>& best() const noexcept { return best_; }

private:
    struct Pair {
        std::size_t i, j;
    };

    // Adding k elements to s chosen ones creates at most k*s + k(k+1)/2 sums.
    static std::size_t extra_needed(std::size_t s, std::size_t uncovered) {
        std::size_t k = 0;
        while (k * s + k * (k + 1) / 2 < uncovered) ++k;
        return k;
    }

    // Smallest k such that the k best single-element gains against the
    // chosen set, plus k(k+1)/2 sums among the new elements, reach the
    // uncovered count.
    std::size_t gain_bound(const std::vector<std::size_t>& uncovered) {
        std::fill(gain_.begin(), gain_.end(), 0);
        for (std::size_t t : uncovered) {
            ++stamp_;
            for (const auto& p : pairs_[t]) {
                for (auto [u, v] : {std::pair{p.i, p.j}, std::pair{p.j, p.i}}) {
                    if (!chosen_[u] && chosen_[v] && seen_[u] != stamp_) {
                        seen_[u] = stamp_;
                        ++gain_[u];
                    }
                }
            }
        }
        sorted_gain_.assign(gain_.begin(), gain_.end());
        std::sort(sorted_gain_.begin(), sorted_gain_.end(), std::greater<>());
        std::size_t k = 0, reach = 0;
        while (reach + k * (k + 1) / 2 < uncovered.size()) {
            if (k < sorted_gain_.size()) reach += sorted_gain_[k];
            ++k;
        }
        return k;
    }

    // Greedy cover: repeatedly add the pair with the most newly covered
    // targets per new element. Only seeds the incumbent.
    void greedy() {
        std::vector<std::size_t> uncovered(pairs_.size());
        for (std::size_t t = 0; t < uncovered.size(); ++t) uncovered[t] = t;
        while (!uncovered.empty()) {
            double best_score = -1;
            Pair best_pair{0, 0};
            for (std::size_t t : uncovered) {
                for (const auto& p : pairs_[t]) {
                    const std::size_t fresh = new_elements(p);
                    set_pair(p, true);
                    std::size_t gained = 0;
                    for (std::size_t o : uncovered) gained += covered(o);
                    set_pair(p, false);
                    const double score = static_cast<double>(gained) / static_cast<double>(fresh);
                    if (score > best_score) {
                        best_score = score;
                        best_pair = p;
                    }
                }
            }
            if (best_score < 0) break;
            for (std::size_t e : {best_pair.i, best_pair.j}) {
                if (!chosen_[e]) {
                    chosen_[e] = 1;
                    current_.push_back(e);
                }
            }
            std::erase_if(uncovered, [&](std::size_t t) { return covered(t); });
        }
        if (uncovered.empty() && current_.size() < best_size_) {
            best_size_ = current_.size();
            best_ = current_;
        }
        for (std::size_t e : current_) chosen_[e] = 0;
        current_.clear();
    }

    // Toggles the not-yet-chosen elements of p; used only by greedy().
    void set_pair(const Pair& p, bool on) {
        if (on) {
            pending_.clear();
            for (std::size_t e : {p.i, p.j})
                if (!chosen_[e]) {
                    chosen_[e] = 1;
                    pending_.push_back(e);
                }
        } else {
            for (std::size_t e : pending_) chosen_[e] = 0;
        }
    }

    std::size_t new_elements(const Pair& p) const { return !chosen_[p.i] + (p.j != p.i && !chosen_[p.j]); }

    bool covered(std::size_t t) const {
        for (const auto& p : pairs_[t])
            if (chosen_[p.i] && chosen_[p.j]) return true;
        return false;
    }

    void dfs(const std::vector<std::size_t>& uncovered) {
        if (aborted_) return;
        if (node_limit_ && nodes_ >= node_limit_) {
            aborted_ = true;
            return;
        }
        ++nodes_;
        const std::size_t s = current_.size();
        // A chosen set seen before has already been explored under a
        // weaker incumbent.
        if (visited_.size() < kMaxVisited && !visited_.insert(key_).second) return;
        if (uncovered.empty()) {
            if (s < best_size_) {
                best_size_ = s;
                best_ = current_;
            }
            return;
        }
        if (std::max(s + extra_needed(s, uncovered.size()), counting_) >= best_size_) return;
        if (s + gain_bound(uncovered) >= best_size_) return;
        const std::size_t room = best_size_ - 1 - s;

        // Most constrained target: fewest pairs that still fit under the incumbent.
        std::size_t pick = uncovered.front(), pick_count = SIZE_MAX;
        for (std::size_t t : uncovered) {
            std::size_t viable = 0;
            for (const auto& p : pairs_[t]) viable += new_elements(p) <= room;
            if (viable < pick_count) {
                pick_count = viable;
                pick = t;
                if (viable == 0) return;
            }
        }
        std::vector<Pair> options;
        for (const auto& p : pairs_[pick])
            if (new_elements(p) <= room) options.push_back(p);
        std::stable_sort(options.begin(), options.end(),
                         [&](const Pair& x, const Pair& y) { return new_elements(x) < new_elements(y); });

        std::vector<std::size_t> next;
        for (const auto& p : options) {
            const std::size_t added_before = current_.size();
            for (std::size_t e : {p.i, p.j}) {
                if (!chosen_[e]) {
                    chosen_[e] = 1;
                    current_.push_back(e);
                    toggle_key(e);
                }
            }
            next.clear();
            for (std::size_t t : uncovered)
                if (!covered(t)) next.push_back(t);
            dfs(next);
            while (current_.size() > added_before) {
                toggle_key(current_.back());
                chosen_[current_.back()] = 0;
                current_.pop_back();
            }
            if (aborted_) return;
        }
    }

    const RationalSet& universe_;
    std::uint64_t node_limit_;
    std::size_t best_size_;
    std::size_t counting_;
    std::vector<std::vector<Pair>> pairs_;
    using Key = std::pair<std::uint64_t, std::uint64_t>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept { return k.first ^ (k.second * 0x9e3779b97f4a7c15ULL); }
    };
    static constexpr std::size_t kMaxVisited = 4'000'000;

    void toggle_key(std::size_t e) {
        key_.first ^= zobrist_[e].first;
        key_.second ^= zobrist_[e].second;
    }

    std::vector<char> chosen_;
    std::vector<std::size_t> pending_;
    std::vector<Key> zobrist_;
    Key key_{0, 0};
    std::unordered_set<Key, KeyHash> visited_;
    std::vector<std::size_t> gain_, sorted_gain_;
    std::vector<std::uint64_t> seen_;
    std::uint64_t stamp_ = 0;
    std::vector<std::size_t> current_;
    std::optional<std::vector<std::size_t>> best_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

}  // namespace detail

/// Minimum-size B inside a finite universe U with A contained in B + B.
///
/// Branch and bound: cover the uncovered target with the fewest usable
/// pairs, pairs adding fewer new elements first; prune with the counting
/// bound on how many sums k new elements can add. Optimality is relative
/// to U.
inline BasisSearchResult min_basis(const RationalSet& a, const BasisOptions& opts = {}) {
    if (a.empty()) throw PreconditionError("min_basis: empty target set");
    BasisSearchResult out;
    out.universe = opts.universe ? *opts.universe : default_basis_universe(a, opts.limits);
    out.size_cap = opts.size_cap.value_or(default_basis_cap(a.size()));
    out.counting_lower_bound = basis_counting_bound(a.size());

    detail::BasisSearch search(a, out.universe, out.size_cap, opts.node_limit);
    search.run();
    out.nodes = search.nodes();
    if (search.best()) {
        std::vector<Rational> b;
        for (std::size_t i : *search.best()) b.push_back(out.universe[i]);
        out.basis = RationalSet(b);
    }
    if (search.aborted())
        out.status = BasisStatus::node_limit;
    else
        out.status = out.found() ? BasisStatus::optimal : BasisStatus::infeasible;
    return out;
}

/// (L, K) profile of a candidate basis B for A.
inline LKProfile lk_of_candidate(const RationalSet& a, const RationalSet& b) {
    return lk_profile(build_containment_graph(b, a));
}

enum class DecomposeStatus { decomposed, irreducible, node_limit };

inline const char* to_string(DecomposeStatus s) {
    switch (s) {
        case DecomposeStatus::decomposed: return "decomposed";
        case DecomposeStatus::irreducible: return "irreducible";
        case DecomposeStatus::node_limit: return "node_limit";
    }
    return "?";
}

struct Decomposition {
    DecomposeStatus status = DecomposeStatus::irreducible;
    RationalSet b;  // min(B) = 0
    RationalSet c;  // min(C) = min(A)
    std::uint64_t nodes = 0;
    bool found() const noexcept { return status == DecomposeStatus::decomposed; }
};

namespace detail {

// Elements of A are visited in increasing order. With min(B) = 0 and
// min(C) = min(A) = a0, every b lies in A - a0 and every c in A, and any
// representation a = b + c uses b <= a - a0 and c <= a. So when a is
// visited we decide whether a - a0 joins B and whether a joins C, and a
// must be explained by then.
class DecomposeSearch {
public:
    DecomposeSearch(const RationalSet& a, std::uint64_t node_limit) : a_(a), node_limit_(node_limit) {}

    bool run() { return dfs(0); }
    bool aborted() const noexcept { return aborted_; }
    std::uint64_t nodes() const noexcept { return nodes_; }
    const std::vector<Rational>& b() const noexcept { return b_; }
    const std::vector<Rational>& c() const noexcept { return c_; }

private:
    bool sums_ok_new_b(const Rational& nb) const {
        for (const auto& c : c_)
            if (!a_.contains(nb + c)) return false;
        return true;
    }

    bool sums_ok_new_c(const Rational& nc) const {
        for (const auto& b : b_)
            if (!a_.contains(b + nc)) return false;
        return true;
    }

    bool explained(const Rational& x) const {
        for (const auto& b : b_)
            if (std::binary_search(c_.begin(), c_.end(), x - b)) return true;
        return false;
    }

    bool dfs(std::size_t idx) {
        if (aborted_) return false;
        if (node_limit_ && nodes_ >= node_limit_) {
            aborted_ = true;
            return false;
        }
        ++nodes_;
        if (idx == a_.size()) return b_.size() >= 2 && c_.size() >= 2;
        const Rational& x = a_[idx];
        const Rational nb = x - a_.front();
        // Options in order: new b only, new c only, both, neither.
        static constexpr bool take_b[] = {true, false, true, false};
        static constexpr bool take_c[] = {false, true, true, false};
        for (int opt = 0; opt < 4; ++opt) {
            if (idx == 0 && opt != 2) continue;
            bool ok = true, pushed_b = false, pushed_c = false;
            if (take_b[opt]) {
                ok = sums_ok_new_b(nb);
                if (ok) {
                    b_.push_back(nb);
                    pushed_b = true;
                }
            }
            if (ok && take_c[opt]) {
                ok = sums_ok_new_c(x);
                if (ok) {
                    c_.push_back(x);
                    pushed_c = true;
                }
            }
            if (ok && explained(x) && dfs(idx + 1)) return true;
            if (pushed_c) c_.pop_back();
            if (pushed_b) b_.pop_back();
            if (aborted_) return false;
        }
        return false;
    }

    const RationalSet& a_;
    std::uint64_t node_limit_;
    std::vector<Rational> b_, c_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

}  // namespace detail

/// Complete search for A = B + C with |B|, |C| >= 2, normalized so that
/// min(B) = 0. Returns the first witness in construction order.
inline Decomposition decompose(const RationalSet& a, std::uint64_t node_limit = 0) {
    if (a.size() < 2) throw PreconditionError("decompose: need |A| >= 2");
    detail::DecomposeSearch search(a, node_limit);
    Decomposition out;
    const bool found = search.run();
    out.nodes = search.nodes();
    if (found) {
        out.status = DecomposeStatus::decomposed;
        out.b = RationalSet(search.b());
        out.c = RationalSet(search.c());
    } else {
        out.status = search.aborted() ? DecomposeStatus::node_limit : DecomposeStatus::irreducible;
    }
    return out;
}

struct DecompositionReport {
    Decomposition decomposition;
    std::size_t set_size = 0;
    double cube_root = 0;         // |A|^{1/3}
    Rational doubling;            // |AA| / |A|
    bool sumset_verified = false;  // B + C == A recomputed
    // Witness only: with alpha = max(C) - min(C), B + max(C) lies in A and in A + alpha.
    std::optional<Rational> alpha;
    bool shift_containment = false;
    std::optional<ShiftBoundCheck> shift_bound;
};

/// Runs decompose and reports the sizes against |A|^{1/3}, the doubling
/// constant, and for a witness the shift containment and overlap bound.
inline DecompositionReport decomposition_report(const RationalSet& a, std::uint64_t node_limit = 0,
                                                const Limits& limits = {}) {
    DecompositionReport r;
    r.decomposition = decompose(a, node_limit);
    r.set_size = a.size();
    r.cube_root = std::cbrt(static_cast<double>(a.size()));
    r.doubling = multiplicative_doubling(a, limits);
    if (!r.decomposition.found()) return r;
    const auto& b = r.decomposition.b;
    const auto& c = r.decomposition.c;
    r.sumset_verified = sumset(b, c, limits) == a;
    const Rational c1 = c.back(), c2 = c.front();
    r.alpha = c1 - c2;
    const auto shifted = translate(b, c1);
    r.shift_containment = shifted.is_subset_of(set_intersection(a, translate(a, *r.alpha)));
    r.shift_bound = shift_bound_check(a, *r.alpha, limits);
    return r;
}

}  // namespace sumprod
