#include <gtest/gtest.h>

#include <random>

#include "sumprod/basis_graph.hpp"
#include "test_support.hpp"

namespace sumprod {
namespace {

Rational q(long long n, long long d = 1) { return Rational(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d))); }

const RationalSet kB{0, 1, 2};
const RationalSet kA{1, 2, 3};

TEST(ContainmentGraph, MicroInstance) {
    const auto g = build_containment_graph(kB, kA);
    EXPECT_EQ(g.edge_count(), 7U);
    EXPECT_EQ(g.density(), q(7, 9));
    EXPECT_EQ(g.neighbor_list(0), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(g.neighbor_list(1), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(g.neighbor_list(2), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(g.edge_count(), sigma(kA, kB, SigmaMode::plus));
}

TEST(ContainmentGraph, EmptyAndComplete) {
    EXPECT_EQ(build_containment_graph(RationalSet{0}, RationalSet{1}).edge_count(), 0U);
    const RationalSet b{0, 1, 2, 3, 4};
    const auto g = build_containment_graph(b, sumset(b, b));
    EXPECT_EQ(g.density(), q(1));
}

TEST(ContainmentGraph, SymmetricAndConsistentWithSigma) {
    std::mt19937_64 rng(201);
    for (int trial = 0; trial < 40; ++trial) {
        const auto b = testing::random_int_set(rng, 2 + trial % 10, -8, 8);
        const auto a = testing::random_int_set(rng, 3 + trial % 15, -16, 16);
        const auto g = build_containment_graph(b, a);
        for (std::size_t i = 0; i < g.order(); ++i)
            for (std::size_t j = 0; j < g.order(); ++j) EXPECT_EQ(g.adjacent(i, j), g.adjacent(j, i));
        EXPECT_EQ(g.edge_count(), sigma(a, b, SigmaMode::plus));
    }
}

TEST(LKProfile, Examples) {
    const auto p = lk_profile(build_containment_graph(kB, kA));
    EXPECT_EQ(p.l(), q(3, 7));
    EXPECT_EQ(p.k_squared(), q(3));
    EXPECT_EQ(p.density(), q(1) / (p.l() * p.k_squared()));
    EXPECT_TRUE(p.covers_target);

    const RationalSet b{0, 1, 2, 3};
    const auto a = sumset(b, b);
    const auto pc = lk_profile(build_containment_graph(b, a));
    EXPECT_EQ(pc.l(), q(static_cast<long long>(a.size()), 16));
    EXPECT_EQ(pc.density(), q(1));

    const auto p0 = lk_profile(build_containment_graph(RationalSet{0}, RationalSet{0}));
    EXPECT_EQ(p0.edges, 1U);
    EXPECT_EQ(p0.l(), q(1));
    EXPECT_EQ(p0.k_squared(), q(1));

    EXPECT_THROW(lk_profile(build_containment_graph(RationalSet{0}, RationalSet{1})), PreconditionError);
}

TEST(LKProfile, IdentityAndBounds) {
    std::mt19937_64 rng(203);
    for (int trial = 0; trial < 60; ++trial) {
        const auto b = testing::random_int_set(rng, 2 + trial % 8, -6, 6);
        const auto a = testing::random_int_set(rng, 2 + trial % 12, -12, 12);
        const auto g = build_containment_graph(b, a);
        if (g.edge_count() == 0) continue;
        const auto p = lk_profile(g);
        EXPECT_EQ(p.density(), q(1) / (p.l() * p.k_squared()));
        EXPECT_GE(p.l(), q(static_cast<long long>(a.size())) / q(static_cast<long long>(b.size() * b.size())));
        if (p.covers_target) {
            EXPECT_GE(p.edges, a.size());
        }
    }
}

TEST(LKProfile, DefaultThreshold) {
    // e^2 / |B|^3 = 49 / 27 -> 2.
    const auto p = lk_profile(build_containment_graph(kB, kA));
    EXPECT_EQ(p.richness_scale(), q(49, 27));
    EXPECT_EQ(default_richness_threshold(p), 2U);
}

TEST(Gowers, CompleteGraphSucceeds) {
    const RationalSet b{0, 1, 2, 3, 4};
    const auto g = build_containment_graph(b, sumset(b, b));
    const auto ex = gowers_extract(g, q(1, 10));
    EXPECT_TRUE(ex.success);
    EXPECT_EQ(ex.bad_pairs, 0U);
    EXPECT_EQ(ex.subset_set, b);
}

TEST(Gowers, MicroInstance) {
    const auto g = build_containment_graph(kB, kA);
    const auto ex = gowers_extract(g, q(1, 2));
    EXPECT_EQ(ex.pivot, 1U);
    EXPECT_EQ(ex.subset_set, kB);
    EXPECT_EQ(ex.threshold, q(49, 108));  // (1/2)(49/81)(3)/2
    EXPECT_EQ(ex.bad_pairs, 0U);
    EXPECT_TRUE(ex.success);
}

TEST(Gowers, SingleEdge) {
    // B = {0, 5}, A = {0}: only the loop (0, 0).
    const auto g = build_containment_graph(RationalSet{0, 5}, RationalSet{0});
    ASSERT_EQ(g.edge_count(), 1U);
    const auto ex = gowers_extract(g, q(1, 2));
    EXPECT_EQ(ex.subset_set, RationalSet{0});
    // alpha = 1/4, threshold = (1/2)(1/16)(2)/2 = 1/32; |N(0) ∩ N(0)| = 1.
    EXPECT_EQ(ex.bad_pairs, 0U);
    EXPECT_TRUE(ex.size_ok);  // 1 >= (1/4)(2)/2
    EXPECT_TRUE(ex.success);
}

TEST(Gowers, EpsilonRange) {
    const auto g = build_containment_graph(kB, kA);
    EXPECT_THROW(gowers_extract(g, q(0)), PreconditionError);
    EXPECT_THROW(gowers_extract(g, q(1)), PreconditionError);
}

TEST(Gowers, AlphaOneAlwaysSucceeds) {
    std::mt19937_64 rng(205);
    for (int trial = 0; trial < 20; ++trial) {
        const auto b = testing::random_int_set(rng, 2 + trial % 9, -20, 20);
        const auto ex = gowers_extract(build_containment_graph(b, sumset(b, b)), q(1, 100));
        EXPECT_TRUE(ex.success);
        EXPECT_EQ(ex.bad_pairs, 0U);
    }
}

TEST(RichPairs, Examples) {
    const auto g = build_containment_graph(kB, kA);
    const auto r2 = rich_pairs(g, 2);
    std::vector<std::pair<std::size_t, std::size_t>> got;
    for (const auto& p : r2) got.emplace_back(p.first, p.second);
    EXPECT_EQ(got, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}}));
    EXPECT_EQ(rich_pairs(g, 1).size(), 6U);
    EXPECT_TRUE(rich_pairs(g, 4).empty());
    EXPECT_THROW(rich_pairs(g, 0), PreconditionError);
}

TEST(RichPairs, AntitoneAndSymmetric) {
    std::mt19937_64 rng(207);
    for (int trial = 0; trial < 20; ++trial) {
        const auto b = testing::random_int_set(rng, 8, -8, 8);
        const auto a = testing::random_int_set(rng, 14, -16, 16);
        const auto g = build_containment_graph(b, a);
        auto key_set = [](const std::vector<RichPair>& v) {
            std::set<std::pair<std::size_t, std::size_t>> s;
            for (const auto& p : v) s.emplace(p.first, p.second);
            return s;
        };
        for (std::uint64_t t = 1; t < 6; ++t) {
            const auto lo = key_set(rich_pairs(g, t));
            const auto hi = key_set(rich_pairs(g, t + 1));
            EXPECT_TRUE(std::includes(lo.begin(), lo.end(), hi.begin(), hi.end()));
            for (const auto& [i, j] : lo) EXPECT_TRUE(lo.count({j, i}));
        }
    }
}

TEST(DifferenceRepresentations, Examples) {
    const auto g = build_containment_graph(kB, kA);
    const auto rep = verify_difference_representations(g, RationalSet{0, 1}, 2);
    // Pairs (0,0),(0,1),(1,0),(1,1): diagonal -> |A| = 3, off-diagonal -> 2.
    EXPECT_EQ(rep.pairs, 4U);
    EXPECT_EQ(rep.min_count, 2U);
    EXPECT_EQ(rep.pairs_at_least_tau, 4U);
    EXPECT_TRUE(rep.injection_holds);

    // A Sidon target with b1 - b2 outside A - A: zero solutions.
    const auto g2 = build_containment_graph(RationalSet{0, 100}, RationalSet{1, 2, 4, 8});
    const auto rep2 = verify_difference_representations(g2, RationalSet{0, 100}, 1);
    EXPECT_EQ(rep2.min_count, 0U);
    EXPECT_TRUE(rep2.injection_holds);

    EXPECT_THROW(verify_difference_representations(g, RationalSet{7}, 1), PreconditionError);
}

TEST(DifferenceRepresentations, InjectionExhaustive) {
    std::mt19937_64 rng(209);
    std::uint64_t violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto b = testing::random_int_set(rng, 1 + trial % 12, -10, 10);
        const auto a = testing::random_int_set(rng, 1 + trial % 20, -20, 20);
        const auto g = build_containment_graph(b, a);
        violations += verify_difference_representations(g, b, 1).injection_violations;
    }
    EXPECT_EQ(violations, 0U);
}

}  // namespace
}  // namespace sumprod
