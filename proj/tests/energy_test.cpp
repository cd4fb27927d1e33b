#include <gtest/gtest.h>

#include <random>

#include "sumprod/energy.hpp"
#include "test_support.hpp"

namespace sumprod {
namespace {

TEST(Energy, AdditiveExamples) {
    EXPECT_EQ(additive_energy(RationalSet{0, 1, 2}), 19U);
    EXPECT_EQ(additive_energy(RationalSet{42}), 1U);
    EXPECT_EQ(additive_energy(RationalSet{1, 2, 4, 8}), 28U);
    EXPECT_EQ(additive_energy(RationalSet{1, 2, 4}), 15U);
}

TEST(Energy, MultiplicativeExamples) {
    EXPECT_EQ(multiplicative_energy(RationalSet{1, 2, 4}), 19U);
    EXPECT_EQ(multiplicative_energy(RationalSet{-3}), 1U);
    EXPECT_EQ(multiplicative_energy(RationalSet{1, 2, 3}), 15U);
    // Zero makes every quadruple with a zero on each side collide.
    EXPECT_EQ(multiplicative_energy(RationalSet{0, 1, 2}), 31U);
}

TEST(Energy, RepresentationMass) {
    const RationalSet s{1, 3, 4, 9}, t{0, 2, 5};
    for (auto op : {BinaryOp::plus, BinaryOp::minus, BinaryOp::times}) {
        const auto r = representation_function(s, t, op);
        std::uint64_t mass = 0;
        for (const auto& [k, v] : r) mass += v;
        EXPECT_EQ(mass, s.size() * t.size());
    }
}

TEST(Energy, MatchesQuadrupleEnumeration) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = testing::random_rational_set(rng, 1 + trial % 12, 8, 3);
        const auto v = testing::as_vector(s);
        EXPECT_EQ(additive_energy(s), testing::brute_additive_energy(v));
        EXPECT_EQ(multiplicative_energy(s), testing::brute_multiplicative_energy(v));
        EXPECT_GE(additive_energy(s), s.size() * s.size());
        EXPECT_LE(additive_energy(s), s.size() * s.size() * s.size());
    }
}

TEST(Energy, DilationAndTranslationInvariance) {
    std::mt19937_64 rng(103);
    const Rational lambda(mpz_class(-7), mpz_class(3)), shift(mpz_class(5), mpz_class(2));
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = testing::random_rational_set(rng, 6, 9, 4);
        EXPECT_EQ(additive_energy(dilate(s, lambda)), additive_energy(s));
        EXPECT_EQ(multiplicative_energy(dilate(s, lambda)), multiplicative_energy(s));
        EXPECT_EQ(additive_energy(translate(s, shift)), additive_energy(s));
    }
}

TEST(Energy, SidonCharacterization) {
    auto is_sidon = [](const RationalSet& s) {
        std::vector<Rational> sums;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i; j < s.size(); ++j) sums.push_back(s[i] + s[j]);
        std::sort(sums.begin(), sums.end());
        return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
    };
    auto sidon_energy = [](const RationalSet& s) { return 2 * s.size() * s.size() - s.size(); };
    for (const auto& s : {RationalSet{1, 2, 4, 8, 16, 32}, RationalSet{0, 1, 3, 7}, RationalSet{0, 1, 2, 3},
                          RationalSet{1, 3, 9, 27}, RationalSet{0, 1, 3, 4}}) {
        EXPECT_EQ(additive_energy(s) == sidon_energy(s), is_sidon(s)) << s.str();
    }
    EXPECT_TRUE(is_sidon(RationalSet{0, 1, 3, 7}));
    EXPECT_EQ(additive_energy(RationalSet{0, 1, 3, 7}), 28U);
}

TEST(Energy, Sigma) {
    EXPECT_EQ(sigma(RationalSet{1}, RationalSet{0, 1, 2}, SigmaMode::minus), 2U);
    EXPECT_EQ(sigma(RationalSet{100}, RationalSet{0, 1, 2}, SigmaMode::minus), 0U);
    EXPECT_EQ(sigma(RationalSet{1, 2, 3}, RationalSet{0, 1, 2}, SigmaMode::plus), 7U);
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = testing::random_int_set(rng, 6, -10, 10);
        const auto b = testing::random_int_set(rng, 5, -6, 6);
        const auto r = representation_function(b, b, BinaryOp::plus);
        std::uint64_t via_rep = 0;
        for (const auto& x : a)
            if (auto it = r.find(x); it != r.end()) via_rep += it->second;
        EXPECT_EQ(sigma(a, b, SigmaMode::plus), via_rep);
        EXPECT_LE(sigma(a, b, SigmaMode::minus), b.size() * b.size());
    }
}

TEST(Energy, ShiftIntersection) {
    EXPECT_EQ(shift_intersection(RationalSet{1, 2, 4}, Rational(1)), 1U);
    EXPECT_EQ(shift_intersection(RationalSet{0, 1, 2, 3}, Rational(1)), 3U);
    std::vector<Rational> gp;
    for (int i = 0; i < 16; ++i) gp.emplace_back(1LL << i);
    EXPECT_EQ(shift_intersection(RationalSet(gp), Rational(1)), 1U);
    EXPECT_THROW(shift_intersection(RationalSet{1, 2}, Rational(0)), PreconditionError);
}

TEST(Energy, ShiftBoundExactAgreesWithFloat) {
    std::vector<Rational> gp;
    for (int i = 0; i < 10; ++i) gp.emplace_back(1LL << i);
    const RationalSet a(gp);
    const auto check = shift_bound_check(a, Rational(1));
    EXPECT_TRUE(check.holds);
    EXPECT_TRUE(check.holds_float);
    EXPECT_EQ(check.product_size, 19U);
    // AP: M grows, overlap n-1 stays under the bound.
    const RationalSet ap{0, 1, 2, 3, 4, 5, 6, 7};
    const auto ap_check = shift_bound_check(remove_zero(ap), Rational(1));
    EXPECT_TRUE(ap_check.holds);
}

TEST(Energy, PrimeFieldEnergy) {
    const PrimeField f7(7);
    std::vector<Residue> sub{Residue(1, f7), Residue(2, f7), Residue(4, f7)};
    const ResidueSet s(sub, f7);
    // Multiplicative subgroup of order 3: E_x = |S|^3.
    EXPECT_EQ(multiplicative_energy(s), 27U);
    EXPECT_EQ(additive_energy(s), testing::brute_additive_energy(testing::as_vector(s)));
}

}  // namespace
}  // namespace sumprod
