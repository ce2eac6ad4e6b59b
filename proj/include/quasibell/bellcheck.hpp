#pragma once

#include <array>

#include "quasibell/quasi.hpp"
#include "quasibell/scalar.hpp"
#include "quasibell/singlet.hpp"

namespace quasibell {

/// The two reduced inequalities
///   1 + <AB> >= |<AC> - <BC>|   and   1 - <AB> >= |<AC> + <BC>|.
template <class T>
struct BellVerdict {
    T ineq1_lhs{};
    T ineq1_rhs{};
    T ineq2_lhs{};
    T ineq2_rhs{};
    T margin{};  // min(ineq1_lhs - ineq1_rhs, ineq2_lhs - ineq2_rhs)
    bool satisfied = false;
};

/// Eight times the joint quasiprobability at family parameter c / 8, in joint
/// order +++ ... ---. Each entry has the form 1 +- <AB> +- <AC> +- <BC> +- c;
/// all are >= 0 exactly when that family member is non-negative.
///
/// The entries are generated from the pseudoinverse solution and the kernel
/// direction rather than from a hard-coded table.
template <class T>
std::array<T, 8> eight_inequalities(const CorrelationTriple<T>& corr, const T& c);

template <class T>
BellVerdict<T> bell_pair(const CorrelationTriple<T>& corr, const T& eps = default_epsilon<T>());

/// Verdicts of three independent deciders for one correlation triple.
struct EquivalenceReport {
    bool bell_satisfied = false;     // both reduced inequalities
    bool interval_nonempty = false;  // feasible t-interval of the quasiprobability family
    bool lp_feasible = false;        // exact simplex on {M x = p, x >= 0}

    bool agree() const { return bell_satisfied == interval_nonempty && interval_nonempty == lp_feasible; }
};

/// Runs all three deciders in exact arithmetic.
EquivalenceReport equivalence_report(const CorrelationTriple<Rational>& corr);

inline bool equivalence_check(const CorrelationTriple<Rational>& corr) { return equivalence_report(corr).agree(); }

}  // namespace quasibell
