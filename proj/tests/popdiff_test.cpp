#include <gtest/gtest.h>

#include <random>

#include "sumprod/popdiff.hpp"
#include "test_support.hpp"

namespace sumprod {
namespace {

Rational q(long long n, long long d = 1) { return Rational(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d))); }

const RationalSet kB{0, 1, 2};
const RationalSet kA{1, 2, 3};

// Sextuple count over B^6 by direct enumeration.
std::uint64_t brute_collisions(const RationalSet& b) {
    const auto v = testing::as_vector(b);
    std::uint64_t count = 0;
    for (const auto& b2 : v)
        for (const auto& b1 : v)
            for (const auto& x : v) {
                if ((b1 + x).is_zero()) continue;
                for (const auto& c2 : v)
                    for (const auto& c1 : v)
                        for (const auto& y : v) {
                            if ((c1 + y).is_zero()) continue;
                            if ((b2 + x) / (b1 + x) == (c2 + y) / (c1 + y)) ++count;
                        }
            }
    return count;
}

TEST(PopularRatios, MicroInstance) {
    const auto g = build_containment_graph(kB, kA);
    const auto cert = build_popular_ratios(g, kB, 2);
    const RationalSet expected(std::vector<Rational>{q(2), q(3, 2), q(1, 2), q(2, 3)});
    EXPECT_EQ(cert.ratios, expected);
    EXPECT_EQ(cert.multiplicity, (std::vector<std::uint64_t>{2, 2, 2, 2}));
    EXPECT_EQ(cert.rich_pairs, 4U);
    EXPECT_EQ(cert.triple_count, 8U);
    EXPECT_EQ(cert.multiplicity_sum, 8U);
    EXPECT_EQ(cert.collisions, 98);
    EXPECT_EQ(cert.collisions, brute_collisions(kB));
    EXPECT_TRUE(cert.conservation_holds);
    EXPECT_TRUE(cert.cauchy_schwarz_holds);
    EXPECT_TRUE(cert.subset_of_ratio_set);
    // (0, 1) with b = 1 is the first generator of 2.
    const auto& w = cert.witnesses[cert.ratios.index_of(q(2))];
    EXPECT_EQ(w.b1, 0U);
    EXPECT_EQ(w.b2, 1U);
    EXPECT_EQ(w.b, 1U);
    // 0 + 0 = 0 is a vanishing denominator among the B^3 triples.
    EXPECT_EQ(cert.skipped_triples, 3U);
}

TEST(PopularRatios, EmptyCases) {
    const auto g = build_containment_graph(kB, kA);
    const auto none = build_popular_ratios(g, kB, 4);
    EXPECT_TRUE(none.ratios.empty());
    EXPECT_EQ(none.multiplicity_sum, 0U);
    EXPECT_TRUE(none.cauchy_schwarz_holds);
    EXPECT_TRUE(build_popular_ratios(g, RationalSet{1}, 1).ratios.empty());
}

TEST(PopularRatios, ZeroInTargetIsAnError) {
    const auto g = build_containment_graph(RationalSet{-1, 0, 1}, RationalSet{0, 1});
    EXPECT_THROW(build_popular_ratios(g, RationalSet{-1, 0, 1}, 1), DivisionByZero);
}

TEST(PopularRatios, ChainOnRandomInstances) {
    std::mt19937_64 rng(301);
    for (int trial = 0; trial < 40; ++trial) {
        const auto b = testing::random_int_set(rng, 3 + trial % 6, 0, 12);
        auto a = remove_zero(testing::random_int_set(rng, 4 + trial % 10, 1, 24));
        const auto g = build_containment_graph(b, a);
        if (g.edge_count() == 0) continue;
        const auto cert = build_popular_ratios(g, b, 1 + trial % 3);
        EXPECT_TRUE(cert.conservation_holds);
        EXPECT_TRUE(cert.cauchy_schwarz_holds);
        EXPECT_TRUE(cert.subset_of_ratio_set);
        if (b.size() <= 5) {
            EXPECT_EQ(cert.collisions, brute_collisions(b));
        }
    }
}

TEST(RatioSolutions, CountsAndConstruction) {
    const auto d = ratio_set(kA, kA);
    EXPECT_EQ(solutions_1_minus_x(q(1), d), d.size());
    EXPECT_EQ(solutions_1_minus_x(q(2), d), 3U);
    EXPECT_EQ(solutions_1_minus_x(q(1), RationalSet{1}), 1U);

    const auto g = build_containment_graph(kB, kA);
    const auto cert = build_popular_ratios(g, kB, 2);
    const auto rep = ratio_solution_report(g, cert);
    EXPECT_TRUE(rep.minimized_over_witnesses);
    EXPECT_EQ(rep.identity_failures, 0U);
    EXPECT_TRUE(rep.exact_dominates);
    EXPECT_EQ(rep.min_constructive, 2U);
}

TEST(Identities, Examples) {
    EXPECT_TRUE(verify_identity_difference(q(1), q(2), q(3), q(5)));
    EXPECT_TRUE(verify_identity_difference(q(4), q(4), q(1), q(-2)));
    EXPECT_THROW(verify_identity_difference(q(1), q(2), q(-1), q(5)), DivisionByZero);
    EXPECT_TRUE(verify_identity_product(q(1), q(2), q(3), q(4)));
    EXPECT_TRUE(verify_identity_product(q(1), q(2), q(3), q(3)));
    EXPECT_THROW(verify_identity_product(q(1), q(2), q(-2), q(4)), DivisionByZero);
}

TEST(Identities, RandomRationals) {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 12);
    auto draw = [&] { return Rational(mpz_class(num(rng)), mpz_class(den(rng))); };
    int checked = 0;
    while (checked < 2000) {
        const Rational a = draw(), b = draw(), c = draw(), d = draw();
        if ((a + c).is_zero() || (b + c).is_zero() || (b + d).is_zero()) continue;
        EXPECT_TRUE(verify_identity_difference(a, b, c, d));
        EXPECT_TRUE(verify_identity_product(a, b, c, d));
        ++checked;
    }
}

TEST(QuadrupleBound, Examples) {
    const auto trivial = quadruple_lower_bound(RationalSet{1}, RationalSet{1}, RationalSet{}, 0);
    EXPECT_TRUE(trivial.preconditions_hold());
    EXPECT_EQ(trivial.energy, 1U);
    EXPECT_TRUE(trivial.holds);

    const RationalSet y{1, 2}, x{1, 2};
    const auto small = quadruple_lower_bound(y, x, RationalSet{2}, solutions_1_minus_x(q(2), x));
    EXPECT_EQ(small.n, 1U);
    EXPECT_EQ(small.energy, 15U);  // E_+({1, 2, 4})
    EXPECT_EQ(small.bound, 2);
    EXPECT_TRUE(small.holds);
    EXPECT_TRUE(small.quadruples_distinct);
    EXPECT_TRUE(small.quadruples_valid);
    EXPECT_EQ(small.constructed, 2U);
}

TEST(QuadrupleBound, PreconditionsReportedIndividually) {
    const auto rep = quadruple_lower_bound(RationalSet{0, 1}, RationalSet{2, 3}, RationalSet{5}, 1);
    EXPECT_FALSE(rep.one_in_x);
    EXPECT_FALSE(rep.r_subset_x);
    EXPECT_FALSE(rep.zero_not_in_y);
    EXPECT_FALSE(rep.preconditions_hold());
}

TEST(QuadrupleBound, GeometricProgression) {
    const RationalSet a{1, 2, 4, 8};
    const RationalSet b{0, 1, 2, 4, 8};
    const auto g = build_containment_graph(b, a);
    const auto cert = build_popular_ratios(g, b, 1);
    ASSERT_FALSE(cert.ratios.empty());
    const auto x = ratio_set(a, a);
    std::uint64_t n = UINT64_MAX;
    for (const auto& v : cert.ratios) n = std::min(n, solutions_1_minus_x(v, x));
    const auto rep = quadruple_lower_bound(a, x, cert.ratios, n);
    EXPECT_TRUE(rep.preconditions_hold());
    EXPECT_EQ(rep.energy, 190U);  // E_+(AA/A), AA/A a 10-term GP
    EXPECT_TRUE(rep.holds);
    EXPECT_TRUE(rep.quadruples_distinct);
}

TEST(RatioSets, Examples) {
    const auto xy = build_ratio_sets(RationalSet{0, 1}, RationalSet{2, 3});
    const RationalSet expected(std::vector<Rational>{q(2, 3), q(3, 2), q(3, 4), q(4, 3)});
    EXPECT_EQ(xy.x, expected);
    EXPECT_EQ(xy.y, expected);
    EXPECT_THROW(build_ratio_sets(RationalSet{0, 1}, RationalSet{2}), PreconditionError);
    // Witness of 2/3 = (0 + 2)/(1 + 2) is (b1, b2, c) = (0, 1, 2).
    const auto& w = xy.x_witness[xy.x.index_of(q(2, 3))];
    EXPECT_EQ(w[0], q(0));
    EXPECT_EQ(w[1], q(1));
    EXPECT_EQ(w[2], q(2));
}

TEST(RatioSets, DegenerateValuesExcluded) {
    std::mt19937_64 rng(305);
    for (int trial = 0; trial < 30; ++trial) {
        const auto b = testing::random_int_set(rng, 2 + trial % 4, -5, 5);
        const auto c = testing::random_int_set(rng, 2 + trial % 3, -5, 5);
        const auto xy = build_ratio_sets(b, c);
        EXPECT_FALSE(xy.x.contains(q(0)));
        EXPECT_FALSE(xy.x.contains(q(1)));
        EXPECT_FALSE(xy.y.contains(q(0)));
        EXPECT_FALSE(xy.y.contains(q(1)));
    }
}

TEST(RatioEnergy, Examples) {
    const auto rep = ratio_energy_from_decomposition(RationalSet{2, 3, 4}, RationalSet{0, 1}, RationalSet{2, 3});
    EXPECT_EQ(rep.x_size, 4U);
    EXPECT_EQ(rep.y_size, 4U);
    EXPECT_EQ(rep.energy, 424U);
    EXPECT_EQ(rep.x_product, 24);
    EXPECT_TRUE(rep.holds_x);
    EXPECT_TRUE(rep.holds_y);
    EXPECT_EQ(rep.identity_failures, 0U);
    EXPECT_EQ(rep.min_solutions, 1U);  // c' = c is excluded as y = 1
    EXPECT_THROW(ratio_energy_from_decomposition(RationalSet{0, 1, 2, 3}, RationalSet{0, 1}, RationalSet{0, 2}),
                 PreconditionError);
    EXPECT_THROW(ratio_energy_from_decomposition(RationalSet{2, 3, 5}, RationalSet{0, 1}, RationalSet{2, 3}),
                 PreconditionError);
}

TEST(PopularRatios, PrimeField) {
    const PrimeField f(13);
    auto set = [&](std::initializer_list<long long> v) {
        std::vector<Residue> out;
        for (auto x : v) out.emplace_back(x, f);
        return ResidueSet(out, f);
    };
    const auto g = build_containment_graph(set({0, 1, 2, 3}), set({1, 2, 3, 4, 5}));
    const auto cert = build_popular_ratios(g, g.basis(), 1);
    EXPECT_TRUE(cert.conservation_holds);
    EXPECT_TRUE(cert.cauchy_schwarz_holds);
    EXPECT_TRUE(cert.subset_of_ratio_set);
}

}  // namespace
}  // namespace sumprod
