#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quasibell/exactla.hpp"
#include "quasibell/quasi.hpp"
#include "quasibell/scalar.hpp"
#include "quasibell/singlet.hpp"

namespace quasibell {

struct Observable {
    std::string name;
    std::size_t cardinality = 2;
};

/// Prescribed distribution over a subset of observables. `table` is row-major
/// over `over` in the listed order, first observable slowest.
struct MarginalTable {
    std::vector<std::size_t> over;
    std::vector<Rational> table;
};

inline constexpr std::size_t kDefaultJointCap = 1'000'000;

/// The joint outcome space exceeds the configured cap.
class JointSizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A finite marginal-compatibility instance. Construction validates every
/// invariant (unique names, cardinalities >= 2, valid subsets, tables of the
/// right length that are non-negative and sum to exactly 1) and throws
/// std::invalid_argument or JointSizeError.
class MarginalProblem {
public:
    MarginalProblem(std::vector<Observable> observables, std::vector<MarginalTable> marginals,
                    std::size_t joint_cap = kDefaultJointCap);

    const std::vector<Observable>& observables() const { return observables_; }
    const std::vector<MarginalTable>& marginals() const { return marginals_; }
    std::size_t joint_size() const { return joint_size_; }
    std::vector<std::size_t> cardinalities() const;

    /// Throws std::out_of_range for unknown names.
    std::size_t index_of(std::string_view name) const;

private:
    std::vector<Observable> observables_;
    std::vector<MarginalTable> marginals_;
    std::size_t joint_size_ = 1;
};

struct ConstraintSystem {
    RatMatrix matrix;
    RatVector rhs;
};

struct BuildOptions {
    /// Skip the last entry of every table; it is implied by the others and
    /// the normalization row.
    bool drop_redundant = true;
};

/// One row per (retained) table entry in table order, then the normalization row.
ConstraintSystem build_constraint_system(const MarginalProblem& problem, BuildOptions options = {});

struct FeasibilityResult {
    Verdict status = Verdict::Inconsistent;
    std::optional<RatVector> witness;  // present iff Proper
    std::size_t homogeneous_dim = 0;   // dimension of the kernel of the constraint matrix
};

/// Decides whether {x : matrix x = rhs, x >= 0} is non-empty with an exact
/// phase-one simplex under Bland's rule. Inconsistent when the equalities
/// alone have no solution.
FeasibilityResult lp_feasible(const RatMatrix& matrix, const RatVector& rhs);

FeasibilityResult solve_problem(const MarginalProblem& problem, BuildOptions options = {});

/// Outcome indices of joint slot `index`, first observable slowest.
std::vector<std::size_t> joint_outcome(std::size_t index, const std::vector<std::size_t>& cardinalities);

/// Marginal of a joint table over `over`, row-major in the listed order.
template <class T>
std::vector<T> marginalize(const std::vector<T>& joint, const std::vector<std::size_t>& cardinalities,
                           const std::vector<std::size_t>& over) {
    std::size_t size = 1;
    for (auto o : over) size *= cardinalities.at(o);
    std::vector<T> out(size);
    for (std::size_t j = 0; j < joint.size(); ++j) {
        const auto outcome = joint_outcome(j, cardinalities);
        std::size_t k = 0;
        for (auto o : over) k = k * cardinalities[o] + outcome[o];
        out[k] += joint[j];
    }
    return out;
}

/// Product of independent single-observable distributions, first table slowest.
template <class T>
std::vector<T> product_distribution(const std::vector<std::vector<T>>& singles) {
    using std::abs;
    std::vector<T> joint{T(1)};
    for (const auto& single : singles) {
        T total{};
        for (const auto& p : single) {
            if (p < T(0)) throw std::invalid_argument("product_distribution: negative probability");
            total += p;
        }
        if (single.empty() || abs(total - T(1)) > default_epsilon<T>()) {
            throw std::invalid_argument("product_distribution: table does not sum to 1");
        }
        std::vector<T> next;
        next.reserve(joint.size() * single.size());
        for (const auto& q : joint)
            for (const auto& p : single) next.push_back(q * p);
        joint = std::move(next);
    }
    return joint;
}

/// The three-observable problem (A, B, C) with pair tables BC, AC, AB in that
/// order; with redundant rows dropped its constraint matrix is build_matrix().
MarginalProblem bell_problem(const BellMarginals<Rational>& marginals);

}  // namespace quasibell
