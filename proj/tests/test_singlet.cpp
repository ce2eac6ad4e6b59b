#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "quasibell/singlet.hpp"
#include "support/random_inputs.hpp"
#include "support/singlet_oracle.hpp"

using namespace quasibell;

namespace {

oracle::Axis axis(const Direction& d) { return {d.x(), d.y(), d.z()}; }

}  // namespace

TEST(Direction, NormalizesAndRejectsDegenerate) {
    const Direction d(3.0, 0.0, 4.0);
    EXPECT_NEAR(d.x() * d.x() + d.y() * d.y() + d.z() * d.z(), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(d.x(), 0.6);
    EXPECT_THROW(Direction(0.0, 0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(Direction(1e-12, 0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(Direction(NAN, 0.0, 1.0), std::invalid_argument);
    EXPECT_EQ(Direction::coplanar(90.0).x(), 1.0);
    EXPECT_EQ(Direction::coplanar(90.0).z(), 0.0);
    EXPECT_EQ(Direction::coplanar(180.0).z(), -1.0);
}

TEST(SingletCorrelations, CoplanarZeroSixtyOneTwenty) {
    const auto c = singlet_correlations(Direction::coplanar(0), Direction::coplanar(60), Direction::coplanar(120));
    EXPECT_NEAR(c.ab, -0.5, 1e-12);
    EXPECT_NEAR(c.ac, 0.5, 1e-12);
    EXPECT_NEAR(c.bc, -0.5, 1e-12);

    const oracle::Axis a{0, 0, 1};
    const oracle::Axis b{std::sin(M_PI / 3), 0, std::cos(M_PI / 3)};
    const oracle::Axis g{std::sin(2 * M_PI / 3), 0, std::cos(2 * M_PI / 3)};
    EXPECT_NEAR(oracle::correlation(a, b), -0.5, 1e-12);
    EXPECT_NEAR(oracle::correlation(a, g), 0.5, 1e-12);
    EXPECT_NEAR(oracle::correlation(b, g), -0.5, 1e-12);
}

TEST(SingletCorrelations, OrthogonalAndAntiparallel) {
    const Direction alpha(1, 0, 0), beta(0, 1, 0), gamma(-1, 0, 0);
    const auto c = singlet_correlations(alpha, beta, gamma);
    EXPECT_EQ(c.ab, 0.0);
    EXPECT_EQ(c.ac, 1.0);
    EXPECT_EQ(c.bc, 0.0);
    EXPECT_NEAR(oracle::correlation(axis(alpha), axis(gamma)), 1.0, 1e-12);
}

TEST(PairTable, FormulaAndFlip) {
    const auto t = pair_table(0.5, false);
    EXPECT_DOUBLE_EQ(t[kPlus][kPlus], 0.375);
    EXPECT_DOUBLE_EQ(t[kPlus][kMinus], 0.125);
    EXPECT_DOUBLE_EQ(t[kMinus][kPlus], 0.125);
    EXPECT_DOUBLE_EQ(t[kMinus][kMinus], 0.375);
    const auto f = pair_table(0.5, true);
    EXPECT_DOUBLE_EQ(f[kPlus][kPlus], 0.125);
    EXPECT_DOUBLE_EQ(f[kPlus][kMinus], 0.375);

    const auto exact = pair_table(Rational(-1, 2), false);
    EXPECT_EQ(exact[kPlus][kPlus], Rational(1, 8));
    EXPECT_EQ(exact[kMinus][kPlus], Rational(3, 8));
    EXPECT_THROW(pair_table(1.5, false), std::domain_error);
    EXPECT_THROW(pair_table(Rational(-3, 2), true), std::domain_error);
}

TEST(PairTable, MatchesFourByFourOracleOnRandomPairs) {
    std::mt19937_64 rng(31337);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Direction u = testing_support::random_direction(rng);
        const Direction v = testing_support::random_direction(rng);
        const auto table = pair_table(correlation(u, v), false);
        const auto flipped = pair_table(correlation(u, v), true);
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                const double q = oracle::joint_probability(axis(u), outcome_sign(a), axis(v), outcome_sign(b));
                worst = std::max(worst, std::abs(table[a][b] - q));
                // Flipped table: the first outcome is reported with reversed sign.
                const double qf = oracle::joint_probability(axis(u), -outcome_sign(a), axis(v), outcome_sign(b));
                worst = std::max(worst, std::abs(flipped[a][b] - qf));
            }
        }
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(BellMarginals, VectorOrderAndTables) {
    const auto m = marginals_from_correlations(CorrelationTriple<Rational>{Rational(-1, 2), Rational(1, 2), Rational(-1, 2)});
    // BC is the (B2, C2) table with B2 = -B1: (1 - bc)/4 on the diagonal.
    EXPECT_EQ(m.p_vector[0], Rational(3, 8));
    EXPECT_EQ(m.p_vector[1], Rational(1, 8));
    EXPECT_EQ(m.p_vector[3], Rational(3, 8));
    EXPECT_EQ(m.p_vector[6], Rational(1, 8));
    EXPECT_EQ(m.p_vector[7], Rational(3, 8));
    EXPECT_EQ(m.p_vector[9], Rational(1));
}

TEST(Rationalize, NearestMillionth) {
    const auto r = rationalize(CorrelationTriple<double>{-0.5, 0.70710678118, 1.0 / 3.0});
    EXPECT_EQ(r.ab, Rational(-1, 2));
    EXPECT_EQ(r.ac, Rational(707107, 1'000'000));
    EXPECT_EQ(r.bc, Rational(333333, 1'000'000));
}
