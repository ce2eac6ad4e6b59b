#include "quasibell/scan.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "quasibell/bellcheck.hpp"

namespace quasibell {

namespace {

double parse_angle(std::string_view text, std::string_view whole) {
    const std::string s(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw std::invalid_argument("malformed angle range '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

AngleRange AngleRange::parse(std::string_view text) {
    const auto first = text.find(':');
    if (first == std::string_view::npos) return point(parse_angle(text, text));
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw std::invalid_argument("angle range must be START:STOP:STEP, got '" + std::string(text) + "'");
    }
    return {parse_angle(text.substr(0, first), text), parse_angle(text.substr(first + 1, second - first - 1), text),
            parse_angle(text.substr(second + 1), text)};
}

std::vector<double> AngleRange::values() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
        throw std::invalid_argument("angle range has non-finite bounds");
    }
    if (!(step > 0.0)) throw std::invalid_argument("angle step must be positive");
    if (start < 0.0 || start >= 360.0) throw std::invalid_argument("angle range start must lie in [0, 360)");
    if (stop < start || stop > 360.0) throw std::invalid_argument("angle range stop must lie in [start, 360]");

    if (stop == start) return {start};
    const auto count = static_cast<std::size_t>(std::ceil((stop - start) / step - 1e-9));
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
}

std::vector<ScanRow> run_scan(const ScanSpec& spec) {
    const auto ab_values = spec.ab.values();
    const auto ac_values = spec.ac.values();
    if (!(spec.eps >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");

    const Direction alpha = Direction::coplanar(0.0);
    std::vector<ScanRow> rows;
    rows.reserve(ab_values.size() * ac_values.size());
    for (double theta_ab : ab_values) {
        const Direction beta = Direction::coplanar(theta_ab);
        for (double theta_ac : ac_values) {
            const Direction gamma = Direction::coplanar(theta_ac);
            ScanRow row;
            row.theta_ab = theta_ab;
            row.theta_ac = theta_ac;
            row.corr = singlet_correlations(alpha, beta, gamma);
            row.margin = bell_pair(row.corr, spec.eps).margin;
            row.verdict = classify(marginals_from_correlations(row.corr).p_vector, spec.eps).tag;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string format_number(double value) {
    if (value == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << kScanCsvHeader << '\n';
    for (const auto& r : rows) {
        os << format_number(r.theta_ab) << ',' << format_number(r.theta_ac) << ',' << format_number(r.corr.ab) << ','
           << format_number(r.corr.ac) << ',' << format_number(r.corr.bc) << ',' << format_number(r.margin) << ','
           << verdict_name(r.verdict) << '\n';
    }
}

}  // namespace quasibell
