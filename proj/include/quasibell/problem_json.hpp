#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "quasibell/marginal.hpp"

namespace quasibell {

inline constexpr int kProblemSchemaVersion = 1;

/// A problem document failed to parse or violates the schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a problem document:
///
///   {"schema": 1,
///    "observables": [{"name": "A", "cardinality": 2}, ...],
///    "marginals": [{"over": ["A", "B"], "table": ["1/4", "0.25", ...]}, ...]}
///
/// Table entries are strings holding decimals or "p/q" fractions (JSON
/// integers are also accepted). An optional "description" string is ignored.
/// Throws SchemaError, or JointSizeError when the joint space exceeds the cap.
MarginalProblem parse_problem_document(std::string_view text, std::size_t joint_cap = kDefaultJointCap);

/// Serializes a problem in the same schema, fractions as "p/q" strings.
std::string problem_document(const MarginalProblem& problem, std::string_view description = {});

/// Machine-readable solve report: status, homogeneous dimension, joint size,
/// observable names and the witness (each slot with its outcome indices and
/// exact probability), or null when there is none.
std::string solution_document(const MarginalProblem& problem, const FeasibilityResult& result);

}  // namespace quasibell
