#include "quasibell/singlet.hpp"

#include <algorithm>
#include <numbers>

namespace quasibell {

Direction::Direction(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::invalid_argument("direction has non-finite components");
    }
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm < 1e-9) throw std::invalid_argument("direction is (near) zero; refusing to normalize");
    x_ = x / norm;
    y_ = y / norm;
    z_ = z / norm;
}

Direction Direction::coplanar(double degrees) {
    if (!std::isfinite(degrees)) throw std::invalid_argument("angle is not finite");
    double reduced = std::fmod(degrees, 360.0);
    if (reduced < 0) reduced += 360.0;

    if (std::fmod(reduced, 90.0) == 0.0) {
        switch (static_cast<int>(reduced / 90.0)) {
            case 0: return {0.0, 0.0, 1.0};
            case 1: return {1.0, 0.0, 0.0};
            case 2: return {0.0, 0.0, -1.0};
            default: return {-1.0, 0.0, 0.0};
        }
    }
    const double radians = reduced * std::numbers::pi / 180.0;
    return {std::sin(radians), 0.0, std::cos(radians)};
}

double correlation(const Direction& u, const Direction& v) {
    // Rounding can push |u.v| a few ulps past 1.
    return std::clamp(-u.dot(v), -1.0, 1.0);
}

CorrelationTriple<double> singlet_correlations(const Direction& alpha, const Direction& beta,
                                               const Direction& gamma) {
    return {correlation(alpha, beta), correlation(alpha, gamma), correlation(beta, gamma)};
}

BellMarginals<double> bell_marginals(const Direction& alpha, const Direction& beta, const Direction& gamma) {
    return marginals_from_correlations(singlet_correlations(alpha, beta, gamma));
}

CorrelationTriple<Rational> rationalize(const CorrelationTriple<double>& corr, std::int64_t denominator) {
    return {Rational::nearest(corr.ab, denominator), Rational::nearest(corr.ac, denominator),
            Rational::nearest(corr.bc, denominator)};
}

}  // namespace quasibell
