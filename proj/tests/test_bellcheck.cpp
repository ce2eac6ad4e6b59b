#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "quasibell/bellcheck.hpp"
#include "quasibell/marginal.hpp"
#include "support/random_inputs.hpp"

using namespace quasibell;

namespace {

using Triple = CorrelationTriple<Rational>;

Triple triple(long ab, long ac, long bc, long den = 1) {
    return {Rational(ab, den), Rational(ac, den), Rational(bc, den)};
}

/// The eight printed left-hand sides, written out literally.
std::array<Rational, 8> printed_list(const Triple& k, const Rational& c) {
    const Rational one(1);
    return {one + k.ab + k.ac - k.bc - c, one + k.ab - k.ac + k.bc + c, one - k.ab + k.ac + k.bc + c,
            one - k.ab - k.ac - k.bc - c, one - k.ab - k.ac - k.bc + c, one - k.ab + k.ac + k.bc - c,
            one + k.ab - k.ac + k.bc - c, one + k.ab + k.ac - k.bc + c};
}

bool all_nonnegative(const std::array<Rational, 8>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.sign() >= 0; });
}

}  // namespace

TEST(EightInequalities, UniformCase) {
    for (const auto& v : eight_inequalities(triple(0, 0, 0), Rational(0))) EXPECT_EQ(v, Rational(1));
}

TEST(EightInequalities, CanonicalViolationNegativeForEveryC) {
    const Triple k = triple(-1, 1, -1, 2);
    const auto at_zero = eight_inequalities(k, Rational(0));
    EXPECT_EQ(at_zero[0], Rational(3, 2));
    // 1 - (-1/2) - 1/2 - (-1/2) = 3/2.
    EXPECT_EQ(at_zero[3], Rational(3, 2));
    EXPECT_EQ(*std::min_element(at_zero.begin(), at_zero.end()), Rational(-1, 2));
    for (int i = -4000; i <= 4000; ++i) {
        const auto v = eight_inequalities(k, Rational(i, 1000));
        ASSERT_FALSE(all_nonnegative(v)) << "c = " << i << "/1000";
    }
}

TEST(EightInequalities, MatchesPrintedListWithCEqualToEightT) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const Triple k = rationalize(testing_support::random_singlet_triple(rng));
        const Rational c = testing_support::random_rational(rng);
        EXPECT_EQ(eight_inequalities(k, c), printed_list(k, c));

        // Same quantity from the family directly: 8 x(t) with t = c / 8.
        const auto family = solve_family(marginals_from_correlations(k).p_vector);
        ASSERT_TRUE(family);
        const auto x = family->at(c / Rational(8));
        const auto list = printed_list(k, c);
        for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(Rational(8) * x[i], list[i]);
    }
}

TEST(EightInequalities, SignFlippedBcTripleIsInfeasible) {
    // (-1, -1, +1) evaluates per the formula but no c makes all eight non-negative:
    // 1 + <AB> = 0 < 2 = |<AC> - <BC>|. Coincident axes give <BC> = -1 instead.
    const Triple k = triple(-1, -1, 1);
    EXPECT_EQ(eight_inequalities(k, Rational(0)), printed_list(k, Rational(0)));
    for (int i = -80; i <= 80; ++i) EXPECT_FALSE(all_nonnegative(eight_inequalities(k, Rational(i, 10))));
    const auto r = equivalence_report(k);
    EXPECT_FALSE(r.bell_satisfied);
    EXPECT_FALSE(r.lp_feasible);
    EXPECT_TRUE(r.agree());

    const Triple coincident = triple(-1, -1, -1);
    EXPECT_TRUE(all_nonnegative(eight_inequalities(coincident, Rational(0))));
    EXPECT_TRUE(equivalence_report(coincident).lp_feasible);
}

TEST(BellPair, Examples) {
    const auto v = bell_pair(triple(-1, 1, -1, 2));
    EXPECT_EQ(v.ineq1_lhs, Rational(1, 2));
    EXPECT_EQ(v.ineq1_rhs, Rational(1));
    EXPECT_FALSE(v.satisfied);
    EXPECT_EQ(v.margin, Rational(-1, 2));

    const auto b = bell_pair(triple(0, 1, 0));
    EXPECT_TRUE(b.satisfied);
    EXPECT_EQ(b.margin, Rational(0));
    EXPECT_EQ(b.ineq1_lhs, b.ineq1_rhs);
    EXPECT_EQ(b.ineq2_lhs, b.ineq2_rhs);

    const auto u = bell_pair(triple(0, 0, 0));
    EXPECT_TRUE(u.satisfied);
    EXPECT_EQ(u.margin, Rational(1));

    const auto f = bell_pair(CorrelationTriple<double>{-0.5, 0.5, -0.5 - 1e-12});
    EXPECT_FALSE(f.satisfied);
    EXPECT_TRUE(bell_pair(CorrelationTriple<double>{0.0, 1.0, -1e-11}).satisfied);
}

TEST(Equivalence, Examples) {
    const auto violated = equivalence_report(triple(-1, 1, -1, 2));
    EXPECT_FALSE(violated.bell_satisfied);
    EXPECT_FALSE(violated.interval_nonempty);
    EXPECT_FALSE(violated.lp_feasible);
    EXPECT_TRUE(equivalence_check(triple(-1, 1, -1, 2)));

    const auto uniform = equivalence_report(triple(0, 0, 0));
    EXPECT_TRUE(uniform.bell_satisfied && uniform.interval_nonempty && uniform.lp_feasible);
}

TEST(Equivalence, RandomSingletTriples) {
    std::mt19937_64 rng(22);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto r = equivalence_report(rationalize(testing_support::random_singlet_triple(rng)));
        ASSERT_TRUE(r.agree()) << "trial " << trial;
        violations += r.bell_satisfied ? 0 : 1;
    }
    // Both outcomes must actually occur for the agreement to mean anything.
    EXPECT_GT(violations, 50);
    EXPECT_LT(violations, 950);
}

TEST(Equivalence, LpAgreesWithIntervalOnBellFamily) {
    std::mt19937_64 rng(23);
    const RatMatrix m = build_matrix();
    for (int trial = 0; trial < 1000; ++trial) {
        const auto p = marginals_from_correlations(rationalize(testing_support::random_singlet_triple(rng))).p_vector;
        const auto family = solve_family(p);
        ASSERT_TRUE(family);
        const auto lp = lp_feasible(m, RatVector(p.begin(), p.end()));
        EXPECT_EQ(lp.status == Verdict::Proper, family->t_lo <= family->t_hi) << "trial " << trial;
    }
}

TEST(ZeroParameterConverse, X0NonNegativeWheneverBellHolds) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto corr = testing_support::random_singlet_triple(rng);
        if (!bell_pair(corr).satisfied) continue;
        const auto family = solve_family(marginals_from_correlations(corr).p_vector);
        ASSERT_TRUE(family);
        for (double x : family->x0) EXPECT_GE(x, -1e-10);
    }
}
