#include "quasibell/exactla.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace quasibell {

namespace {

void require(bool condition, const char* what) {
    if (!condition) throw std::invalid_argument(what);
}

void swap_rows(RatMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

}  // namespace

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require(entries_.size() == rows_ * cols_, "RatMatrix: entry count does not match dimensions");
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
    if (rows.empty()) return {};
    const std::size_t cols = rows.front().size();
    std::vector<Rational> entries;
    entries.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        require(r.size() == cols, "RatMatrix::from_rows: ragged rows");
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return RatMatrix(rows.size(), cols, std::move(entries));
}

RatVector RatMatrix::row(std::size_t r) const {
    return RatVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RatVector RatMatrix::column(std::size_t c) const {
    RatVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool RatMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

RatMatrix operator*(const RatMatrix& lhs, const RatMatrix& rhs) {
    require(lhs.cols() == rhs.rows(), "matrix product: inner dimensions differ");
    RatMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Rational& a = lhs(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) {
                if (!rhs(k, j).is_zero()) out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

RatVector operator*(const RatMatrix& lhs, const RatVector& rhs) {
    require(lhs.cols() == rhs.size(), "matrix-vector product: dimension mismatch");
    RatVector out(lhs.rows());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            if (!lhs(i, k).is_zero() && !rhs[k].is_zero()) out[i] += lhs(i, k) * rhs[k];
        }
    }
    return out;
}

RatMatrix operator+(const RatMatrix& lhs, const RatMatrix& rhs) {
    require(lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols(), "matrix sum: shape mismatch");
    std::vector<Rational> entries = lhs.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += rhs.entries()[i];
    return RatMatrix(lhs.rows(), lhs.cols(), std::move(entries));
}

RatMatrix operator-(const RatMatrix& lhs, const RatMatrix& rhs) {
    require(lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols(), "matrix difference: shape mismatch");
    std::vector<Rational> entries = lhs.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] -= rhs.entries()[i];
    return RatMatrix(lhs.rows(), lhs.cols(), std::move(entries));
}

Rational dot(const RatVector& lhs, const RatVector& rhs) {
    require(lhs.size() == rhs.size(), "dot: length mismatch");
    Rational s;
    for (std::size_t i = 0; i < lhs.size(); ++i) s += lhs[i] * rhs[i];
    return s;
}

RowEchelon reduced_row_echelon(const RatMatrix& m) {
    RowEchelon out{m, {}};
    RatMatrix& a = out.reduced;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
        std::size_t found = pivot_row;
        while (found < a.rows() && a(found, c).is_zero()) ++found;
        if (found == a.rows()) continue;
        swap_rows(a, pivot_row, found);

        const Rational pivot = a(pivot_row, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(pivot_row, j) /= pivot;

        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == pivot_row || a(r, c).is_zero()) continue;
            const Rational factor = a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) {
                if (!a(pivot_row, j).is_zero()) a(r, j) -= factor * a(pivot_row, j);
            }
        }
        out.pivot_cols.push_back(c);
        ++pivot_row;
    }
    return out;
}

std::size_t rank(const RatMatrix& m) { return reduced_row_echelon(m).pivot_cols.size(); }

std::vector<RatVector> null_space(const RatMatrix& m) {
    const RowEchelon e = reduced_row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
        basis.push_back(canonical_direction(std::move(v)));
    }
    return basis;
}

std::vector<RatVector> left_null_space(const RatMatrix& m) { return null_space(m.transpose()); }

RatVector canonical_direction(RatVector v) {
    mpz_class lcm_den = 1;
    for (const auto& x : v) {
        const mpz_class den = x.denominator();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    }
    mpz_class content = 0;
    for (const auto& x : v) {
        const mpz_class scaled = x.numerator() * (lcm_den / x.denominator());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    }
    if (content == 0) return v;

    int lead_sign = 0;
    for (const auto& x : v) {
        if (!x.is_zero()) {
            lead_sign = x.sign();
            break;
        }
    }
    mpq_class scale(lcm_den, content);
    if (lead_sign < 0) scale = -scale;
    const Rational factor{scale};
    for (auto& x : v) x *= factor;
    return v;
}

bool same_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b) {
    if (a.empty() || b.empty()) {
        const auto nonzero = [](const std::vector<RatVector>& vs) {
            return !vs.empty() && rank(RatMatrix::from_rows(vs)) > 0;
        };
        return nonzero(a) == nonzero(b);
    }
    std::vector<RatVector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const std::size_t ra = rank(RatMatrix::from_rows(a));
    const std::size_t rb = rank(RatMatrix::from_rows(b));
    return ra == rb && rank(RatMatrix::from_rows(both)) == ra;
}

RatMatrix inverse(const RatMatrix& m) {
    require(m.rows() == m.cols(), "inverse: matrix is not square");
    const std::size_t n = m.rows();
    RatMatrix augmented(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
        augmented(r, n + r) = 1;
    }
    const RowEchelon e = reduced_row_echelon(augmented);
    if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) {
        throw std::domain_error("inverse: matrix is singular");
    }
    RatMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(r, c) = e.reduced(r, n + c);
    return out;
}

RatMatrix pseudoinverse(const RatMatrix& m) {
    const RowEchelon e = reduced_row_echelon(m);
    const std::size_t r = e.pivot_cols.size();
    if (r == 0) return RatMatrix(m.cols(), m.rows());

    // m = F G with F the pivot columns of m and G the nonzero rows of the RREF.
    RatMatrix f(m.rows(), r);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < r; ++k) f(i, k) = m(i, e.pivot_cols[k]);
    RatMatrix g(r, m.cols());
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < m.cols(); ++j) g(k, j) = e.reduced(k, j);

    const RatMatrix gt = g.transpose();
    const RatMatrix ft = f.transpose();
    return gt * inverse(g * gt) * inverse(ft * f) * ft;
}

std::optional<RatVector> solve_consistent(const RatMatrix& m, const RatVector& b) {
    require(b.size() == m.rows(), "solve_consistent: right-hand side length differs from row count");
    RatMatrix augmented(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) augmented(r, c) = m(r, c);
        augmented(r, m.cols()) = b[r];
    }
    const RowEchelon e = reduced_row_echelon(augmented);
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()) return std::nullopt;

    RatVector x(m.cols());
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) x[e.pivot_cols[k]] = e.reduced(k, m.cols());
    return x;
}

}  // namespace quasibell
