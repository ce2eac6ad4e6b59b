#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "quasibell/rational.hpp"
#include "quasibell/scalar.hpp"

namespace quasibell {

/// Unit measurement axis for a spin-1/2 observable.
class Direction {
public:
    /// Normalizes (x, y, z). Vectors shorter than 1e-9, or with non-finite
    /// components, are rejected with std::invalid_argument.
    Direction(double x, double y, double z);

    /// Axis in the x-z plane at `degrees` from +z toward +x. Multiples of 90
    /// degrees give exact components.
    static Direction coplanar(double degrees);

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    double dot(const Direction& other) const { return x_ * other.x_ + y_ * other.y_ + z_ * other.z_; }

private:
    double x_, y_, z_;
};

/// <AB> = <A1 B2>, <AC> = <A1 C2>, <BC> = <B1 C2>.
template <class T>
struct CorrelationTriple {
    T ab{};
    T ac{};
    T bc{};
};

/// Joint distribution of two +-1 outcomes; index 0 is +1, index 1 is -1.
template <class T>
using PairTable = std::array<std::array<T, 2>, 2>;

inline constexpr std::size_t kPlus = 0;
inline constexpr std::size_t kMinus = 1;
inline constexpr int outcome_sign(std::size_t index) { return index == kPlus ? 1 : -1; }

/// The three pair tables feeding the joint problem, plus the 10-entry
/// right-hand side in row order BC++, BC+-, BC-+, AC++, AC+-, AC-+, AB++, AB+-, AB-+, 1.
/// `pbc` is the distribution of (B2, C2), so it already carries B2 = -B1.
template <class T>
struct BellMarginals {
    PairTable<T> pab{};
    PairTable<T> pac{};
    PairTable<T> pbc{};
    std::array<T, 10> p_vector{};
};

/// Singlet expectation <(u.sigma_1)(v.sigma_2)> = -u.v.
double correlation(const Direction& u, const Direction& v);

/// Singlet pair table for correlation `corr`: (1 + a b corr)/4, or with `flip`
/// (1 - a b corr)/4. The flip is the only place the B2 = -B1 convention enters.
template <class T>
PairTable<T> pair_table(const T& corr, bool flip) {
    using std::abs;
    if (abs(corr) > T(1) + T(correlation_slack<T>())) {
        throw std::domain_error("correlation outside [-1, 1]");
    }
    PairTable<T> t{};
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            const int s = outcome_sign(a) * outcome_sign(b) * (flip ? -1 : 1);
            t[a][b] = (T(1) + T(s) * corr) / T(4);
        }
    }
    return t;
}

template <class T>
BellMarginals<T> marginals_from_correlations(const CorrelationTriple<T>& corr) {
    BellMarginals<T> m;
    m.pab = pair_table(corr.ab, false);
    m.pac = pair_table(corr.ac, false);
    m.pbc = pair_table(corr.bc, true);
    m.p_vector = {m.pbc[kPlus][kPlus],  m.pbc[kPlus][kMinus], m.pbc[kMinus][kPlus],
                  m.pac[kPlus][kPlus],  m.pac[kPlus][kMinus], m.pac[kMinus][kPlus],
                  m.pab[kPlus][kPlus],  m.pab[kPlus][kMinus], m.pab[kMinus][kPlus],
                  T(1)};
    return m;
}

CorrelationTriple<double> singlet_correlations(const Direction& alpha, const Direction& beta,
                                               const Direction& gamma);

BellMarginals<double> bell_marginals(const Direction& alpha, const Direction& beta, const Direction& gamma);

inline constexpr std::int64_t kRationalizeDenominator = 1'000'000;

/// Nearest fractions with the given denominator, componentwise.
CorrelationTriple<Rational> rationalize(const CorrelationTriple<double>& corr,
                                        std::int64_t denominator = kRationalizeDenominator);

template <class T>
CorrelationTriple<double> to_double(const CorrelationTriple<T>& corr) {
    using quasibell::to_double;
    return {to_double(corr.ab), to_double(corr.ac), to_double(corr.bc)};
}

}  // namespace quasibell
