#include "quasibell/bellcheck.hpp"

#include <algorithm>
#include <stdexcept>

#include "quasibell/marginal.hpp"

namespace quasibell {

template <class T>
std::array<T, 8> eight_inequalities(const CorrelationTriple<T>& corr, const T& c) {
    const auto p = marginals_from_correlations(corr).p_vector;
    const auto family = solve_family(p);
    if (!family) throw std::logic_error("singlet-form marginals failed the consistency equations");

    std::array<T, 8> out{};
    for (std::size_t i = 0; i < 8; ++i) out[i] = T(8) * family->x0[i] + T(family->xh[i]) * c;
    return out;
}

template <class T>
BellVerdict<T> bell_pair(const CorrelationTriple<T>& corr, const T& eps) {
    using std::abs;
    BellVerdict<T> v;
    v.ineq1_lhs = T(1) + corr.ab;
    v.ineq1_rhs = abs(corr.ac - corr.bc);
    v.ineq2_lhs = T(1) - corr.ab;
    v.ineq2_rhs = abs(corr.ac + corr.bc);
    v.margin = std::min(v.ineq1_lhs - v.ineq1_rhs, v.ineq2_lhs - v.ineq2_rhs);
    v.satisfied = !(v.margin < -eps);
    return v;
}

EquivalenceReport equivalence_report(const CorrelationTriple<Rational>& corr) {
    EquivalenceReport report;
    report.bell_satisfied = bell_pair(corr).satisfied;

    const auto marginals = marginals_from_correlations(corr);
    const auto family = solve_family(marginals.p_vector);
    report.interval_nonempty = family && family->has_proper_member();

    // Built from the generic marginal machinery, not from the fixed matrix.
    const auto lp = solve_problem(bell_problem(marginals));
    report.lp_feasible = lp.status == Verdict::Proper;
    return report;
}

template std::array<double, 8> eight_inequalities<double>(const CorrelationTriple<double>&, const double&);
template std::array<Rational, 8> eight_inequalities<Rational>(const CorrelationTriple<Rational>&, const Rational&);
template BellVerdict<double> bell_pair<double>(const CorrelationTriple<double>&, const double&);
template BellVerdict<Rational> bell_pair<Rational>(const CorrelationTriple<Rational>&, const Rational&);

}  // namespace quasibell
