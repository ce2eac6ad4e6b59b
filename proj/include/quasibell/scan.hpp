#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "quasibell/quasi.hpp"
#include "quasibell/singlet.hpp"

namespace quasibell {

/// Angles start, start + step, ... strictly below stop, in degrees.
struct AngleRange {
    double start = 0.0;
    double stop = 360.0;
    double step = 1.0;

    static AngleRange point(double degrees) { return {degrees, degrees, 1.0}; }
    /// "START:STOP:STEP" or a single angle "DEG". Throws std::invalid_argument.
    static AngleRange parse(std::string_view text);

    /// Validates (step > 0, angles in [0, 360)) and expands. A range with
    /// stop == start yields the single angle start.
    std::vector<double> values() const;
};

/// Coplanar scan: A fixed at 0 degrees, B at theta_ab, C at theta_ac.
struct ScanSpec {
    AngleRange ab;
    AngleRange ac;
    double eps = 1e-10;
};

struct ScanRow {
    double theta_ab = 0.0;
    double theta_ac = 0.0;
    CorrelationTriple<double> corr;
    double margin = 0.0;
    Verdict verdict = Verdict::Inconsistent;
};

/// Rows ordered theta_ab outer, theta_ac inner.
std::vector<ScanRow> run_scan(const ScanSpec& spec);

inline constexpr std::string_view kScanCsvHeader = "theta_ab,theta_ac,corr_ab,corr_ac,corr_bc,margin,classification";

/// 12 significant digits; negative zero prints as 0.
std::string format_number(double value);

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace quasibell
