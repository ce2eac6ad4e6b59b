#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "quasibell/marginal.hpp"
#include "quasibell/quasi.hpp"
#include "support/random_inputs.hpp"

using namespace quasibell;

namespace {

MarginalVector<Rational> exact_p(long ab_num, long ac_num, long bc_num, long den) {
    return marginals_from_correlations(
               CorrelationTriple<Rational>{Rational(ab_num, den), Rational(ac_num, den), Rational(bc_num, den)})
        .p_vector;
}

MarginalVector<Rational> uniform_p() { return exact_p(0, 0, 0, 1); }

RatVector as_vector(const JointVector<Rational>& x) { return RatVector(x.begin(), x.end()); }
RatVector as_vector(const MarginalVector<Rational>& p) { return RatVector(p.begin(), p.end()); }

}  // namespace

TEST(HomogeneousDirection, OrientedKernel) {
    const std::array<int, 8> expected{-1, 1, 1, -1, 1, -1, -1, 1};
    EXPECT_EQ(homogeneous_direction(), expected);
    RatVector v;
    for (int x : expected) v.emplace_back(x);
    for (const auto& e : build_matrix() * v) EXPECT_TRUE(e.is_zero());
}

TEST(BuildMatrix, EqualsGeneralConstraintSystemForBellProblem) {
    const auto marg = marginals_from_correlations(CorrelationTriple<Rational>{Rational(1, 3), Rational(-1, 5), Rational(1, 7)});
    const auto system = build_constraint_system(bell_problem(marg));
    EXPECT_EQ(system.matrix, build_matrix());
    EXPECT_EQ(system.rhs, as_vector(marg.p_vector));
}

TEST(CheckConsistency, SingletTriplesPass) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto marg = marginals_from_correlations(testing_support::random_singlet_triple(rng));
        const auto check = check_consistency(marg.p_vector);
        EXPECT_TRUE(check.consistent);
        for (double r : check.residuals) EXPECT_LT(std::abs(r), 1e-12);
        // Each side of every equation is 1/2.
        EXPECT_NEAR(marg.p_vector[0] + marg.p_vector[1], 0.5, 1e-12);
        EXPECT_NEAR(marg.p_vector[3] + marg.p_vector[4], 0.5, 1e-12);
    }
}

TEST(CheckConsistency, PerturbedAndUniform) {
    auto p = marginals_from_correlations(CorrelationTriple<double>{-0.5, 0.5, -0.5}).p_vector;
    p[0] += 0.1;
    const auto bad = check_consistency(p);
    EXPECT_FALSE(bad.consistent);
    EXPECT_NEAR(bad.residuals[0], 0.1, 1e-15);

    const auto good = check_consistency(uniform_p());
    EXPECT_TRUE(good.consistent);
    for (const auto& r : good.residuals) EXPECT_TRUE(r.is_zero());

    auto unnormalized = uniform_p();
    unnormalized[9] = Rational(2);
    EXPECT_THROW(check_consistency(unnormalized), std::invalid_argument);
}

TEST(CheckConsistency, AgreesWithLeftNullProjections) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 500; ++trial) {
        MarginalVector<Rational> p;
        if (trial % 2 == 0) {
            p = marginals_from_correlations(rationalize(testing_support::random_singlet_triple(rng))).p_vector;
        } else {
            for (std::size_t i = 0; i < 9; ++i) p[i] = testing_support::random_rational(rng);
            p[9] = Rational(1);
        }
        const bool explicit_equations = check_consistency(p).consistent;
        const auto proj = left_null_projections(p);
        const bool orthogonal = std::all_of(proj.begin(), proj.end(), [](const Rational& x) { return x.is_zero(); });
        EXPECT_EQ(explicit_equations, orthogonal) << "trial " << trial;
    }
}

TEST(SolveFamily, UniformMarginals) {
    const auto family = solve_family(uniform_p());
    ASSERT_TRUE(family);
    for (const auto& x : family->x0) EXPECT_EQ(x, Rational(1, 8));
    EXPECT_EQ(family->t_lo, Rational(-1, 8));
    EXPECT_EQ(family->t_hi, Rational(1, 8));
}

TEST(SolveFamily, CoincidentAxesContainsDeterministicMixture) {
    const auto family = solve_family(exact_p(-1, -1, -1, 1));
    ASSERT_TRUE(family);
    // B2 = -A1 and C2 = -A1 with certainty: mass 1/2 on +-- and on -++.
    JointVector<Rational> mixture{};
    mixture[joint_index(0, 1, 1)] = Rational(1, 2);
    mixture[joint_index(1, 0, 0)] = Rational(1, 2);
    bool found = false;
    for (const auto& t : {family->t_lo, family->t_hi}) found |= family->at(t) == mixture;
    EXPECT_TRUE(found);
    EXPECT_TRUE(family->has_proper_member());
    const auto lp = lp_feasible(build_matrix(), as_vector(exact_p(-1, -1, -1, 1)));
    EXPECT_EQ(lp.status, Verdict::Proper);
}

TEST(SolveFamily, InconsistentInputPropagates) {
    auto p = exact_p(-1, 1, -1, 2);
    p[0] += Rational(1, 10);
    EXPECT_FALSE(solve_family(p));
    EXPECT_EQ(classify(p).tag, Verdict::Inconsistent);
    EXPECT_FALSE(classify(p).family);
}

TEST(SolveFamily, EveryMemberReproducesMarginalsAndX0IsMinimumNorm) {
    const RatMatrix m = build_matrix();
    std::mt19937_64 rng(13);
    const std::array<Rational, 4> ts{Rational(0), Rational(1, 3), Rational(-5, 7), Rational(11)};
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = marginals_from_correlations(rationalize(testing_support::random_singlet_triple(rng))).p_vector;
        const auto family = solve_family(p);
        ASSERT_TRUE(family);
        for (const auto& t : ts) EXPECT_EQ(m * as_vector(family->at(t)), as_vector(p));
        Rational d(0);
        for (std::size_t i = 0; i < 8; ++i) d += family->x0[i] * Rational(family->xh[i]);
        EXPECT_TRUE(d.is_zero());
        // Interval endpoints are where a component reaches zero.
        if (family->has_proper_member()) {
            const auto lo = family->at(family->t_lo);
            const auto hi = family->at(family->t_hi);
            EXPECT_TRUE(std::any_of(lo.begin(), lo.end(), [](const Rational& x) { return x.is_zero(); }));
            EXPECT_TRUE(std::any_of(hi.begin(), hi.end(), [](const Rational& x) { return x.is_zero(); }));
            for (const auto& x : lo) EXPECT_GE(x, Rational(0));
        }
    }
}

TEST(SolveFamily, DoublePathMatchesExactPath) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 500; ++trial) {
        const auto corr = rationalize(testing_support::random_singlet_triple(rng));
        const auto exact = solve_family(marginals_from_correlations(corr).p_vector);
        const auto approx = solve_family(marginals_from_correlations(to_double(corr)).p_vector);
        ASSERT_TRUE(exact && approx);
        for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(approx->x0[i], exact->x0[i].to_double(), 1e-14);
        EXPECT_NEAR(approx->t_lo, exact->t_lo.to_double(), 1e-14);
        EXPECT_NEAR(approx->t_hi, exact->t_hi.to_double(), 1e-14);
    }
}

TEST(Classify, CanonicalViolation) {
    const auto c = classify(exact_p(-1, 1, -1, 2));
    EXPECT_EQ(c.tag, Verdict::QuasiOnly);
    ASSERT_TRUE(c.family);
    EXPECT_FALSE(c.witness);
    EXPECT_EQ(c.family->t_lo, Rational(1, 16));
    EXPECT_EQ(c.family->t_hi, Rational(-1, 16));
    EXPECT_EQ(lp_feasible(build_matrix(), as_vector(exact_p(-1, 1, -1, 2))).status, Verdict::QuasiOnly);

    const auto p = bell_marginals(Direction::coplanar(0), Direction::coplanar(60), Direction::coplanar(120)).p_vector;
    EXPECT_EQ(classify(p).tag, Verdict::QuasiOnly);
}

TEST(Classify, NegativeComponentAlongWholeSweep) {
    const auto family = solve_family(exact_p(-1, 1, -1, 2));
    ASSERT_TRUE(family);
    // |t| beyond 1 makes some component negative trivially; sweep [-1, 1].
    const int points = 100000;
    for (int k = 0; k <= points; ++k) {
        const Rational t = Rational(2 * k - points, points);
        const auto x = family->at(t);
        ASSERT_TRUE(std::any_of(x.begin(), x.end(), [](const Rational& v) { return v.sign() < 0; })) << "t = " << t;
    }
}

TEST(Classify, BoundaryIsProper) {
    const auto p = bell_marginals(Direction(1, 0, 0), Direction(0, 1, 0), Direction(-1, 0, 0)).p_vector;
    const auto c = classify(p);
    EXPECT_EQ(c.tag, Verdict::Proper);
    ASSERT_TRUE(c.witness);
    for (double x : *c.witness) EXPECT_GE(x, -1e-15);

    const auto exact = classify(exact_p(0, 1, 0, 1));
    EXPECT_EQ(exact.tag, Verdict::Proper);
    EXPECT_EQ(exact.family->t_lo, exact.family->t_hi);
}

TEST(Classify, UniformWitnessAndTStarSelection) {
    const auto c = classify(uniform_p());
    ASSERT_EQ(c.tag, Verdict::Proper);
    EXPECT_EQ(c.t_star, Rational(0));
    for (const auto& x : *c.witness) EXPECT_EQ(x, Rational(1, 8));

    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 300; ++trial) {
        const auto corr = rationalize(testing_support::random_singlet_triple(rng));
        const auto r = classify(marginals_from_correlations(corr).p_vector);
        if (r.tag != Verdict::Proper) continue;
        const auto& f = *r.family;
        const Rational expected = std::clamp(Rational(0), f.t_lo, f.t_hi);
        EXPECT_EQ(r.t_star, expected);
        EXPECT_EQ(*r.witness, f.at(r.t_star));
    }
}

TEST(ReconstructMarginals, Examples) {
    JointVector<Rational> uniform;
    uniform.fill(Rational(1, 8));
    const auto m = reconstruct_marginals(uniform);
    for (const auto* t : {&m.ab, &m.ac, &m.bc})
        for (const auto& row : *t)
            for (const auto& v : row) EXPECT_EQ(v, Rational(1, 4));

    JointVector<Rational> point{};
    point[joint_index(0, 0, 0)] = Rational(1);
    const auto d = reconstruct_marginals(point);
    EXPECT_EQ(d.ab[kPlus][kPlus], Rational(1));
    EXPECT_EQ(d.ac[kPlus][kPlus], Rational(1));
    EXPECT_EQ(d.bc[kPlus][kPlus], Rational(1));

    JointVector<double> unnormalized{};
    unnormalized[0] = 0.5;
    EXPECT_THROW(reconstruct_marginals(unnormalized), std::invalid_argument);
}

TEST(ReconstructMarginals, WitnessesReproduceInputs) {
    std::mt19937_64 rng(16);
    int proper = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto marg = marginals_from_correlations(testing_support::random_singlet_triple(rng));
        const auto c = classify(marg.p_vector);
        if (c.tag != Verdict::Proper) continue;
        ++proper;
        const auto back = reconstruct_marginals(*c.witness);
        const auto p = marginal_vector(back);
        for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(p[i], marg.p_vector[i], 1e-10);
        for (const auto* t : {&back.ab, &back.ac, &back.bc}) {
            const auto& tab = *t;
            EXPECT_NEAR(tab[kMinus][kMinus], 1.0 - tab[kPlus][kPlus] - tab[kPlus][kMinus] - tab[kMinus][kPlus], 1e-12);
        }
        EXPECT_NEAR(back.ab[kMinus][kMinus], marg.pab[kMinus][kMinus], 1e-10);
        EXPECT_NEAR(back.bc[kMinus][kMinus], marg.pbc[kMinus][kMinus], 1e-10);
    }
    EXPECT_GT(proper, 100);
}
