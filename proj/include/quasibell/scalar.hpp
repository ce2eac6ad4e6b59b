#pragma once

#include "quasibell/rational.hpp"

namespace quasibell {

/// Feasibility tolerance used when none is given: 1e-10 for floating point,
/// zero for exact rationals.
template <class T>
T default_epsilon();
template <>
inline double default_epsilon<double>() { return 1e-10; }
template <>
inline Rational default_epsilon<Rational>() { return Rational(0); }

/// Slack allowed on the [-1, 1] range of a correlation.
template <class T>
T correlation_slack();
template <>
inline double correlation_slack<double>() { return 1e-12; }
template <>
inline Rational correlation_slack<Rational>() { return Rational(0); }

}  // namespace quasibell
