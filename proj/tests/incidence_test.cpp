#include <gtest/gtest.h>

#include <random>

#include "sumprod/incidence.hpp"
#include "sumprod/oracle.hpp"
#include "sumprod/set_ops.hpp"
#include "test_support.hpp"

namespace sumprod {
namespace {

using testing::as_vector;
using testing::brute_collinear_triples;

TEST(Incidence, SmallGrids) {
    const RationalSet a{0, 1, 2}, b{0, 1};
    EXPECT_EQ(collinear_triples(a, a, a), 48U);
    EXPECT_EQ(collinear_triples(b, b, b), 0U);
}

TEST(Incidence, LineKeyNormalization) {
    using P = PlanePoint<Rational>;
    const auto vertical = line_through(P{3, 1}, P{3, 7});
    EXPECT_EQ(vertical.a, Rational(1));
    EXPECT_EQ(vertical.b, Rational(0));
    EXPECT_EQ(vertical.c, Rational(3));
    const auto diag = line_through(P{0, 0}, P{2, 2});
    EXPECT_EQ(diag, line_through(P{5, 5}, P{-1, -1}));
    EXPECT_TRUE(diag.contains(P{Rational(1, 2), Rational(1, 2)}));
    EXPECT_THROW(line_through(P{1, 1}, P{1, 1}), PreconditionError);
}

TEST(Incidence, MatchesBruteForce) {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    for (int trial = 0; trial < 30; ++trial) {
        auto pick = [&] { return testing::random_rational_set(rng, size(rng), 6, trial % 3 == 0 ? 2 : 1); };
        const auto x = pick(), y = pick(), z = pick();
        const auto fast = collinear_triples(x, y, z);
        EXPECT_EQ(fast, brute_collinear_triples(as_vector(x), as_vector(y), as_vector(z))) << "trial " << trial;
        if (trial < 6) {
            EXPECT_EQ(fast, oracle::collinear_triples(x, y, z));
        }
    }
}

TEST(Incidence, PrimeFieldMatchesBruteForce) {
    const PrimeField f(7);
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long long> v(0, 6);
    for (int trial = 0; trial < 10; ++trial) {
        auto pick = [&] {
            std::vector<Residue> out;
            for (int i = 0; i < 4; ++i) out.emplace_back(v(rng), f);
            return ResidueSet(out, f);
        };
        const auto x = pick(), y = pick(), z = pick();
        EXPECT_EQ(collinear_triples(x, y, z), brute_collinear_triples(as_vector(x), as_vector(y), as_vector(z)));
    }
}

TEST(Incidence, AffineInvariance) {
    const RationalSet a{0, 1, 3, 4, 9, 10};
    const auto base = collinear_triples(a, a, a);
    EXPECT_EQ(collinear_triples(translate(a, Rational(-17)), translate(a, Rational(-17)), translate(a, Rational(-17))),
              base);
    const auto d = dilate(a, Rational(-3, 7));
    EXPECT_EQ(collinear_triples(d, d, d), base);
}

TEST(Incidence, WideCoordinates) {
    // Same configuration at scales that need 128-bit and multiprecision kernels.
    const RationalSet a{0, 1, 2, 5, 7};
    const auto base = collinear_triples(a, a, a);
    for (unsigned shift : {70U, 140U}) {
        const auto s = dilate(a, Rational(mpz_class(mpz_class(1) << shift)));
        const auto t = translate(s, Rational(3));
        EXPECT_EQ(collinear_triples(t, t, t), base) << shift;
        EXPECT_EQ(sextuple_census(t).nondegenerate, base) << shift;
    }
}

TEST(Incidence, CeilingGuard) {
    Limits limits;
    limits.max_line_pairs = 50;
    const RationalSet a{0, 1, 2};
    EXPECT_THROW(collinear_triples(a, a, a, limits), CeilingExceeded);
}

TEST(Sextuples, Examples) {
    const auto one = sextuple_census(RationalSet{1});
    EXPECT_EQ(one.total, 1U);
    EXPECT_EQ(one.nondegenerate, 0U);
    const auto two = sextuple_census(RationalSet{1, 2});
    EXPECT_EQ(two.total, 40U);
    EXPECT_EQ(two.nondegenerate, 0U);
    const auto three = sextuple_census(RationalSet{0, 1, 2});
    EXPECT_EQ(three.total, 273U);
    EXPECT_EQ(three.nondegenerate, 48U);
    EXPECT_TRUE(three.matches_collinear());
    EXPECT_THROW(sextuple_census(RationalSet{}), PreconditionError);
}

TEST(Sextuples, MatchesEnumeration) {
    std::mt19937_64 rng(4);
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto a = testing::random_int_set(rng, n, -5, 5);
        const auto fast = sextuple_census(a);
        const auto slow = oracle::sextuple_count(a);
        EXPECT_EQ(fast.total, slow.total);
        EXPECT_EQ(fast.nondegenerate, slow.nondegenerate);
        EXPECT_GE(fast.total, fast.nondegenerate);
        EXPECT_TRUE(fast.matches_collinear());
    }
}

TEST(DyadicTable, ThreeByThreeCensus) {
    const RationalSet c{0, 1, 2};
    const auto table = dyadic_table(c, c);
    EXPECT_EQ(table.lines_with_richness(3, 3), 8U);
    EXPECT_EQ(table.lines_with_richness(2, 2), 12U);
    EXPECT_EQ(table.line_count(), 20U);
    EXPECT_EQ(table.buckets.size(), 1U);
    EXPECT_EQ(table.buckets.at({1, 1}), 20U);
    EXPECT_EQ(table.triples(), collinear_triples(c, c, c));
    EXPECT_EQ(table.c_ordered_pairs(), 9U * 8U);

    const auto bound = st_line_bound_check(table);
    ASSERT_EQ(bound.buckets.size(), 1U);
    EXPECT_EQ(bound.buckets[0].bound, Rational(117, 8));
    EXPECT_EQ(bound.buckets[0].ratio, Rational(160, 117));
    EXPECT_EQ(bound.buckets[0].exact_lines, 12U);
    EXPECT_EQ(bound.buckets[0].exact_ratio, Rational(32, 39));
}

TEST(DyadicTable, TwoByTwo) {
    const RationalSet c{0, 1};
    const auto table = dyadic_table(c, c);
    EXPECT_EQ(table.line_count(), 6U);
    EXPECT_EQ(table.lines_with_richness(2, 2), 6U);
    EXPECT_EQ(table.triples(), 0U);
}

TEST(DyadicTable, MixedGrids) {
    const RationalSet c{0, 1}, b{0, 1, 2};
    EXPECT_EQ(collinear_triples(c, c, b), 10U);
    const auto table = dyadic_table(c, b);
    EXPECT_EQ(table.triples(), 10U);
    EXPECT_EQ(table.c_ordered_pairs(), 4U * 3U);
    EXPECT_EQ(table.b_ordered_pairs(), 9U * 8U);
}

TEST(DyadicTable, ReproducesTriplesOnProgressions) {
    for (long long n = 2; n <= 8; ++n) {
        std::vector<Rational> v;
        for (long long i = 0; i < n; ++i) v.emplace_back(i);
        const RationalSet c(v);
        const auto table = dyadic_table(c, c);
        EXPECT_EQ(table.triples(), collinear_triples(c, c, c)) << n;
        EXPECT_EQ(table.c_ordered_pairs(), static_cast<std::uint64_t>(n * n * (n * n - 1)));
        const auto bound = st_line_bound_check(table);
        EXPECT_GT(bound.max_ratio, Rational(0));
    }
}

TEST(DyadicTable, EmptyBucketHasZeroRatio) {
    // Only the diagonal joins the grids, and it carries all four B points.
    const RationalSet c{0, 1}, b{10, 20, 30, 40};
    const auto bound = st_line_bound_check(dyadic_table(c, b));
    bool saw_empty = false;
    for (const auto& e : bound.buckets)
        if (e.lines == 0) {
            saw_empty = true;
            EXPECT_EQ(e.ratio, Rational(0));
        }
    EXPECT_TRUE(saw_empty);
}

TEST(TripleBound, Report) {
    const RationalSet c{0, 1}, b{0, 1, 2};
    const auto r = collinear_triple_bound_check(c, b);
    EXPECT_EQ(r.triples, 10U);
    EXPECT_TRUE(r.hypothesis_ok);
    EXPECT_GT(r.ratio, 0.0);
    EXPECT_FALSE(collinear_triple_bound_check(b, c).hypothesis_ok);

    std::vector<RationalSet> bs;
    for (long long n : {4, 8, 16}) {
        std::vector<Rational> v;
        for (long long i = 0; i < n; ++i) v.emplace_back(i);
        bs.emplace_back(v);
    }
    const auto fam = collinear_triple_bound_family(RationalSet{0, 1, 2, 3}, bs);
    EXPECT_EQ(fam.reports.size(), 3U);
    EXPECT_EQ(fam.slope.points, 3U);
    EXPECT_GT(fam.slope.slope, 0.0);
}

}  // namespace
}  // namespace sumprod
