#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quasibell/rational.hpp"

namespace quasibell {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    /// Throws std::invalid_argument unless entries.size() == rows * cols.
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    static RatMatrix identity(std::size_t n);
    /// Rows must all have the same length.
    static RatMatrix from_rows(const std::vector<RatVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    RatVector row(std::size_t r) const;
    RatVector column(std::size_t c) const;
    const std::vector<Rational>& entries() const { return entries_; }

    RatMatrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

RatMatrix operator*(const RatMatrix& lhs, const RatMatrix& rhs);
RatVector operator*(const RatMatrix& lhs, const RatVector& rhs);
RatMatrix operator+(const RatMatrix& lhs, const RatMatrix& rhs);
RatMatrix operator-(const RatMatrix& lhs, const RatMatrix& rhs);

Rational dot(const RatVector& lhs, const RatVector& rhs);

struct RowEchelon {
    RatMatrix reduced;                   // reduced row echelon form, zero rows last
    std::vector<std::size_t> pivot_cols; // one per nonzero row, increasing
};

RowEchelon reduced_row_echelon(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Basis of {x : m x = 0}, each vector canonicalized (see canonical_direction).
std::vector<RatVector> null_space(const RatMatrix& m);

/// Basis of {y : y^T m = 0}, the orthogonal complement of the column space.
std::vector<RatVector> left_null_space(const RatMatrix& m);

/// Scales v to integer entries with gcd 1 and a positive first nonzero entry.
/// The zero vector is returned unchanged.
RatVector canonical_direction(RatVector v);

/// True when both families span the same subspace.
bool same_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b);

/// Inverse of a square nonsingular matrix. Throws std::domain_error if singular.
RatMatrix inverse(const RatMatrix& m);

/// Exact Moore-Penrose pseudoinverse through the full-rank factorization m = F G
/// read off the reduced row echelon form: m+ = G^T (G G^T)^-1 (F^T F)^-1 F^T.
RatMatrix pseudoinverse(const RatMatrix& m);

/// One exact solution of m x = b (free variables set to zero), or nullopt when
/// b is outside the column space.
std::optional<RatVector> solve_consistent(const RatMatrix& m, const RatVector& b);

}  // namespace quasibell
