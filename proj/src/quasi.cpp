#include "quasibell/quasi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quasibell {

namespace {

// Row order of the right-hand side.
enum : std::size_t { BCpp, BCpm, BCmp, ACpp, ACpm, ACmp, ABpp, ABpm, ABmp, Norm };

void require_normalized(const double& last) {
    if (std::abs(last - 1.0) > 1e-12) throw std::invalid_argument("marginal vector must end with 1");
}
void require_normalized(const Rational& last) {
    if (last != Rational(1)) throw std::invalid_argument("marginal vector must end with 1");
}

const std::array<std::array<double, 10>, 8>& pseudoinverse_doubles() {
    static const auto table = [] {
        std::array<std::array<double, 10>, 8> t{};
        const RatMatrix& pinv = bell_pseudoinverse();
        for (std::size_t r = 0; r < 8; ++r)
            for (std::size_t c = 0; c < 10; ++c) t[r][c] = pinv(r, c).to_double();
        return t;
    }();
    return table;
}

JointVector<double> apply_pseudoinverse(const MarginalVector<double>& p) {
    const auto& pinv = pseudoinverse_doubles();
    JointVector<double> x{};
    for (std::size_t r = 0; r < 8; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < 10; ++c) s += pinv[r][c] * p[c];
        x[r] = s;
    }
    return x;
}

JointVector<Rational> apply_pseudoinverse(const MarginalVector<Rational>& p) {
    const RatVector x = bell_pseudoinverse() * RatVector(p.begin(), p.end());
    JointVector<Rational> out;
    std::copy(x.begin(), x.end(), out.begin());
    return out;
}

template <class T>
T sum(const JointVector<T>& x) {
    T s{};
    for (const auto& v : x) s += v;
    return s;
}

void require_unit_sum(const JointVector<double>& x) {
    if (std::abs(sum(x) - 1.0) > 1e-10) throw std::invalid_argument("joint vector does not sum to 1");
}
void require_unit_sum(const JointVector<Rational>& x) {
    if (sum(x) != Rational(1)) throw std::invalid_argument("joint vector does not sum to 1");
}

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Inconsistent: return "Inconsistent";
        case Verdict::QuasiOnly: return "QuasiOnly";
        case Verdict::Proper: return "Proper";
    }
    return "Unknown";
}

RatMatrix build_matrix() {
    const std::vector<std::vector<int>> rows = {
        {1, 0, 0, 0, 1, 0, 0, 0}, {0, 1, 0, 0, 0, 1, 0, 0}, {0, 0, 1, 0, 0, 0, 1, 0},
        {1, 0, 1, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 1, 0},
        {1, 1, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1, 0, 0},
        {1, 1, 1, 1, 1, 1, 1, 1},
    };
    RatMatrix m(10, 8);
    for (std::size_t r = 0; r < 10; ++r)
        for (std::size_t c = 0; c < 8; ++c) m(r, c) = rows[r][c];
    return m;
}

const RatMatrix& bell_matrix() {
    static const RatMatrix m = build_matrix();
    return m;
}

const RatMatrix& bell_pseudoinverse() {
    static const RatMatrix pinv = pseudoinverse(bell_matrix());
    return pinv;
}

const std::array<int, 8>& homogeneous_direction() {
    static const std::array<int, 8> xh = [] {
        const auto kernel = null_space(bell_matrix());
        if (kernel.size() != 1) throw std::logic_error("constraint matrix kernel is not one-dimensional");
        const int orient = kernel.front()[7].sign();
        std::array<int, 8> v{};
        for (std::size_t i = 0; i < 8; ++i) v[i] = orient * static_cast<int>(kernel.front()[i].numerator().get_si());
        return v;
    }();
    return xh;
}

template <class T>
ConsistencyCheck<T> check_consistency(const MarginalVector<T>& p, const T& eps) {
    require_normalized(p[Norm]);
    ConsistencyCheck<T> out;
    out.residuals = {
        (p[BCpp] + p[BCpm]) - (p[ABpp] + p[ABmp]),
        (p[ACpp] + p[ACpm]) - (p[ABpp] + p[ABpm]),
        (p[BCpp] + p[BCmp]) - (p[ACpp] + p[ACmp]),
    };
    using std::abs;
    out.consistent = std::all_of(out.residuals.begin(), out.residuals.end(),
                                 [&](const T& r) { return !(abs(r) > eps); });
    return out;
}

template <class T>
std::array<T, 3> left_null_projections(const MarginalVector<T>& p) {
    static const std::vector<RatVector> basis = left_null_space(bell_matrix());
    std::array<T, 3> out{};
    for (std::size_t k = 0; k < 3; ++k) {
        T s{};
        for (std::size_t i = 0; i < 10; ++i) {
            if (basis[k][i].is_zero()) continue;
            if constexpr (std::is_same_v<T, double>) {
                s += basis[k][i].to_double() * p[i];
            } else {
                s += basis[k][i] * p[i];
            }
        }
        out[k] = s;
    }
    return out;
}

template <class T>
std::optional<QuasiFamily<T>> solve_family(const MarginalVector<T>& p, const T& eps) {
    if (!check_consistency(p, eps).consistent) return std::nullopt;

    QuasiFamily<T> family;
    family.x0 = apply_pseudoinverse(p);
    family.xh = homogeneous_direction();

    // x0[i] + t xh[i] >= 0 bounds t below where xh[i] = +1 and above where xh[i] = -1.
    std::optional<T> lo, hi;
    for (std::size_t i = 0; i < 8; ++i) {
        if (family.xh[i] > 0) {
            const T bound = -family.x0[i];
            if (!lo || bound > *lo) lo = bound;
        } else {
            const T bound = family.x0[i];
            if (!hi || bound < *hi) hi = bound;
        }
    }
    family.t_lo = *lo;
    family.t_hi = *hi;
    return family;
}

template <class T>
Classification<T> classify(const MarginalVector<T>& p, const T& eps) {
    Classification<T> out;
    out.family = solve_family(p, eps);
    if (!out.family) return out;

    const QuasiFamily<T>& f = *out.family;
    if (!f.has_proper_member(eps)) {
        out.tag = Verdict::QuasiOnly;
        return out;
    }
    out.tag = Verdict::Proper;
    if (f.t_lo > f.t_hi) {
        // Empty by less than eps: take the midpoint of the inverted interval.
        out.t_star = (f.t_lo + f.t_hi) / T(2);
    } else {
        out.t_star = std::clamp(T(0), f.t_lo, f.t_hi);
    }
    out.witness = f.at(out.t_star);
    return out;
}

template <class T>
PairMarginals<T> reconstruct_marginals(const JointVector<T>& x) {
    require_unit_sum(x);
    PairMarginals<T> m;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t c = 0; c < 2; ++c) {
                const T& v = x[joint_index(a, b, c)];
                m.ab[a][b] += v;
                m.ac[a][c] += v;
                m.bc[b][c] += v;
            }
        }
    }
    return m;
}

template <class T>
MarginalVector<T> marginal_vector(const PairMarginals<T>& m) {
    return {m.bc[kPlus][kPlus], m.bc[kPlus][kMinus], m.bc[kMinus][kPlus],
            m.ac[kPlus][kPlus], m.ac[kPlus][kMinus], m.ac[kMinus][kPlus],
            m.ab[kPlus][kPlus], m.ab[kPlus][kMinus], m.ab[kMinus][kPlus],
            T(1)};
}

#define QUASIBELL_INSTANTIATE(T)                                                                  \
    template ConsistencyCheck<T> check_consistency<T>(const MarginalVector<T>&, const T&);       \
    template std::array<T, 3> left_null_projections<T>(const MarginalVector<T>&);               \
    template std::optional<QuasiFamily<T>> solve_family<T>(const MarginalVector<T>&, const T&);   \
    template Classification<T> classify<T>(const MarginalVector<T>&, const T&);                  \
    template PairMarginals<T> reconstruct_marginals<T>(const JointVector<T>&);                    \
    template MarginalVector<T> marginal_vector<T>(const PairMarginals<T>&);

QUASIBELL_INSTANTIATE(double)
QUASIBELL_INSTANTIATE(Rational)

#undef QUASIBELL_INSTANTIATE

}  // namespace quasibell
