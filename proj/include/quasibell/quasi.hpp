#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "quasibell/exactla.hpp"
#include "quasibell/scalar.hpp"
#include "quasibell/singlet.hpp"

namespace quasibell {

/// Outcome of a marginal-compatibility question.
enum class Verdict {
    Inconsistent,  // no joint quasiprobability reproduces the marginals
    QuasiOnly,     // quasiprobabilities exist, none of them non-negative
    Proper,        // a genuine joint probability exists
};

std::string_view verdict_name(Verdict v);

/// Joint outcome vector over (A1, B2, C2), ordered +++, ++-, +-+, +--, -++, -+-, --+, ---.
template <class T>
using JointVector = std::array<T, 8>;

/// Right-hand side in BellMarginals::p_vector order.
template <class T>
using MarginalVector = std::array<T, 10>;

inline constexpr std::size_t joint_index(std::size_t a, std::size_t b, std::size_t c) { return 4 * a + 2 * b + c; }

/// The fixed 10x8 constraint matrix: three BC rows, three AC rows, three AB rows
/// and the normalization row, with the (-,-) entry of each pair dropped.
RatMatrix build_matrix();

/// Shared, lazily built copies of the constraint matrix and its pseudoinverse.
const RatMatrix& bell_matrix();
const RatMatrix& bell_pseudoinverse();

/// Kernel direction of the constraint matrix, oriented with a +1 in the --- slot:
/// (-1, 1, 1, -1, 1, -1, -1, 1).
const std::array<int, 8>& homogeneous_direction();

template <class T>
struct ConsistencyCheck {
    bool consistent = false;
    /// BC++ + BC+- - (AB++ + AB-+), AC++ + AC+- - (AB++ + AB+-), BC++ + BC-+ - (AC++ + AC-+).
    std::array<T, 3> residuals{};
};

/// Evaluates the three compatibility equations between the pair marginals.
/// Requires p[9] == 1.
template <class T>
ConsistencyCheck<T> check_consistency(const MarginalVector<T>& p, const T& eps = default_epsilon<T>());

/// Projections of p onto the computed left-null-space basis of the constraint
/// matrix; all zero exactly when p is in the column space.
template <class T>
std::array<T, 3> left_null_projections(const MarginalVector<T>& p);

/// The line of quasiprobabilities x0 + t xh together with the interval of t
/// on which every component is non-negative. The interval is empty when t_lo > t_hi.
template <class T>
struct QuasiFamily {
    JointVector<T> x0{};
    std::array<int, 8> xh{};
    T t_lo{};
    T t_hi{};

    JointVector<T> at(const T& t) const {
        JointVector<T> x = x0;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += T(xh[i]) * t;
        return x;
    }
    bool has_proper_member(const T& eps = default_epsilon<T>()) const { return !(t_lo > t_hi + eps); }
};

/// x0 = M+ p and the feasible t-interval, or nullopt when p is inconsistent.
template <class T>
std::optional<QuasiFamily<T>> solve_family(const MarginalVector<T>& p, const T& eps = default_epsilon<T>());

template <class T>
struct Classification {
    Verdict tag = Verdict::Inconsistent;
    std::optional<QuasiFamily<T>> family;
    /// Present when tag == Proper; the family member at t_star.
    std::optional<JointVector<T>> witness;
    T t_star{};
};

/// Proper witnesses use t = 0 when it is feasible, otherwise the nearest
/// interval endpoint.
template <class T>
Classification<T> classify(const MarginalVector<T>& p, const T& eps = default_epsilon<T>());

template <class T>
struct PairMarginals {
    PairTable<T> ab{};
    PairTable<T> ac{};
    PairTable<T> bc{};  // (B2, C2)
};

/// All three pair marginals of a joint vector, including the (-,-) entries.
/// Requires the entries of x to sum to 1 (within 1e-10 for doubles).
template <class T>
PairMarginals<T> reconstruct_marginals(const JointVector<T>& x);

/// Packs pair marginals into the 10-entry right-hand side.
template <class T>
MarginalVector<T> marginal_vector(const PairMarginals<T>& m);

}  // namespace quasibell
