// quasibell command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 Proper / pass, 1 failed regression or I/O error,
// 2 usage or malformed input, 3 QuasiOnly, 4 Inconsistent.

#include <cctype>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quasibell/quasibell.h"

namespace {

constexpr int kExitProper = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitQuasiOnly = 3;
constexpr int kExitInconsistent = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int verdict_exit(qb_verdict v) {
    switch (v) {
        case QB_PROPER: return kExitProper;
        case QB_QUASI_ONLY: return kExitQuasiOnly;
        case QB_INCONSISTENT: return kExitInconsistent;
    }
    return kExitFailure;
}

int status_exit(qb_status s) {
    switch (s) {
        case QB_ERR_NULL_ARGUMENT:
        case QB_ERR_INVALID_ARGUMENT:
        case QB_ERR_SCHEMA:
        case QB_ERR_SIZE_CAP:
        case QB_ERR_OUT_OF_RANGE: return kExitUsage;
        default: return kExitFailure;
    }
}

void check(qb_status s) {
    if (s != QB_OK) throw std::runtime_error(std::string(qb_status_message(s)) + ": " + qb_last_error());
}

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("malformed " + what + " '" + text + "'");
        }
    }
    if (values.size() != expected) {
        throw UsageError(what + " needs " + std::to_string(expected) + " comma-separated numbers, got '" + text + "'");
    }
    return values;
}

std::vector<std::string> split_strings(const std::string& text, std::size_t expected, const std::string& what) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    if (out.size() != expected) {
        throw UsageError(what + " needs " + std::to_string(expected) + " comma-separated values, got '" + text + "'");
    }
    return out;
}

qb_vec3 parse_vector(const std::string& text, const std::string& what) {
    const auto v = parse_list(text, 3, what);
    return {v[0], v[1], v[2]};
}

/// "START:STOP:STEP" (stop exclusive) or a single angle.
void parse_range(const std::string& text, double& start, double& stop, double& step) {
    if (text.find(':') == std::string::npos) {
        start = stop = parse_list(text, 1, "angle")[0];
        step = 1.0;
        return;
    }
    std::string normalized = text;
    for (char& ch : normalized)
        if (ch == ':') ch = ',';
    const auto v = parse_list(normalized, 3, "angle range");
    start = v[0];
    stop = v[1];
    step = v[2];
}

const char* text_field(const qb_analysis* a, qb_field field, std::size_t index = 0) {
    const char* out = nullptr;
    check(qb_analysis_text(a, field, index, &out));
    return out;
}

void print_singlet_report(const qb_analysis* a, double eps) {
    const bool exact = qb_analysis_is_exact(a) != 0;
    std::printf("mode            %s", exact ? "exact" : "float");
    if (!exact) std::printf(" (eps %g)", eps);
    std::printf("\n");

    std::printf("correlations    <AB> = %s   <AC> = %s   <BC> = %s\n", text_field(a, QB_FIELD_CORRELATION, 0),
                text_field(a, QB_FIELD_CORRELATION, 1), text_field(a, QB_FIELD_CORRELATION, 2));

    std::printf("pair tables     %-12s %-12s %-12s %-12s\n", "++", "+-", "-+", "--");
    const char* names[3] = {"AB", "AC", "BC (B2,C2)"};
    for (int k = 0; k < 3; ++k) {
        double t[4];
        check(qb_analysis_pair_table(a, static_cast<qb_pair>(k), t));
        std::printf("  %-13s %-12.10g %-12.10g %-12.10g %-12.10g\n", names[k], t[0], t[1], t[2], t[3]);
    }

    double residuals[3];
    int consistent = 0;
    check(qb_analysis_residuals(a, residuals, &consistent));
    std::printf("consistency     %s   residuals %s %s %s\n", consistent ? "pass" : "FAIL",
                text_field(a, QB_FIELD_RESIDUAL, 0), text_field(a, QB_FIELD_RESIDUAL, 1),
                text_field(a, QB_FIELD_RESIDUAL, 2));

    static const char* order[8] = {"+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"};
    if (consistent) {
        std::printf("x0 = M+ p      ");
        for (int i = 0; i < 8; ++i) std::printf(" %s:%s", order[i], text_field(a, QB_FIELD_X0, i));
        std::printf("\n");
        int xh[8];
        check(qb_analysis_homogeneous(a, xh));
        std::printf("xh             ");
        for (int i = 0; i < 8; ++i) std::printf(" %s:%+d", order[i], xh[i]);
        std::printf("\n");
        double lo = 0, hi = 0;
        check(qb_analysis_interval(a, &lo, &hi));
        std::printf("t interval      [%s, %s]%s\n", text_field(a, QB_FIELD_T_LO), text_field(a, QB_FIELD_T_HI),
                    lo > hi ? "  (empty)" : "");
    }

    qb_verdict verdict;
    check(qb_analysis_verdict(a, &verdict));
    std::printf("classification  %s\n", qb_verdict_name(verdict));

    int present = 0;
    check(qb_analysis_witness(a, nullptr, nullptr, &present));
    if (present) {
        std::printf("witness         t* = %s\n               ", text_field(a, QB_FIELD_T_STAR));
        for (int i = 0; i < 8; ++i) std::printf(" %s:%s", order[i], text_field(a, QB_FIELD_WITNESS, i));
        std::printf("\n");
    }

    qb_bell_verdict bell;
    check(qb_analysis_bell(a, &bell));
    std::printf("bell            1 + <AB> = %.12g  vs  |<AC> - <BC>| = %.12g  %s\n", bell.ineq1_lhs, bell.ineq1_rhs,
                bell.ineq1_lhs >= bell.ineq1_rhs ? "holds" : "violated");
    std::printf("                1 - <AB> = %.12g  vs  |<AC> + <BC>| = %.12g  %s\n", bell.ineq2_lhs, bell.ineq2_rhs,
                bell.ineq2_lhs >= bell.ineq2_rhs ? "holds" : "violated");
    std::printf("bell margin     %s (%s)\n", text_field(a, QB_FIELD_MARGIN), bell.satisfied ? "satisfied" : "violated");
}

struct SingletArgs {
    std::string angles, alpha, beta, gamma, correlations;
    double eps = 1e-10;
    bool json = false;
    bool exact = false;
};

int run_singlet(const SingletArgs& args) {
    qb_options options;
    qb_options_init(&options);
    options.eps = args.eps;
    options.exact = args.exact ? 1 : 0;

    const bool have_vectors = !args.alpha.empty() || !args.beta.empty() || !args.gamma.empty();
    const int modes = (!args.angles.empty() ? 1 : 0) + (have_vectors ? 1 : 0) + (!args.correlations.empty() ? 1 : 0);
    if (modes != 1) throw UsageError("give exactly one of --angles, --alpha/--beta/--gamma or --correlations");

    qb_analysis* analysis = nullptr;
    qb_status status = QB_OK;
    if (!args.angles.empty()) {
        const auto a = parse_list(args.angles, 3, "--angles");
        status = qb_analysis_from_angles(a[0], a[1], a[2], &options, &analysis);
    } else if (have_vectors) {
        if (args.alpha.empty() || args.beta.empty() || args.gamma.empty()) {
            throw UsageError("--alpha, --beta and --gamma must all be given");
        }
        const qb_vec3 alpha = parse_vector(args.alpha, "--alpha");
        const qb_vec3 beta = parse_vector(args.beta, "--beta");
        const qb_vec3 gamma = parse_vector(args.gamma, "--gamma");
        status = qb_analysis_from_directions(&alpha, &beta, &gamma, &options, &analysis);
    } else {
        const auto c = split_strings(args.correlations, 3, "--correlations");
        status = qb_analysis_from_correlations(c[0].c_str(), c[1].c_str(), c[2].c_str(), &analysis);
    }
    if (status != QB_OK) {
        std::cerr << "error: " << qb_last_error() << '\n';
        return status_exit(status);
    }

    std::unique_ptr<qb_analysis, decltype(&qb_analysis_free)> guard(analysis, qb_analysis_free);
    if (args.json) {
        const char* text = nullptr;
        check(qb_analysis_json(analysis, &text));
        std::printf("%s\n", text);
    } else {
        print_singlet_report(analysis, args.eps);
    }
    qb_verdict verdict;
    check(qb_analysis_verdict(analysis, &verdict));
    return verdict_exit(verdict);
}

struct ScanArgs {
    std::string ab = "0:360:1";
    std::string ac = "0:360:1";
    double eps = 1e-10;
    std::string out;
};

int run_scan(const ScanArgs& args) {
    qb_scan_spec spec;
    qb_scan_spec_init(&spec);
    parse_range(args.ab, spec.ab_start, spec.ab_stop, spec.ab_step);
    parse_range(args.ac, spec.ac_start, spec.ac_stop, spec.ac_step);
    spec.eps = args.eps;

    if (args.out.empty()) {
        char* text = nullptr;
        const qb_status s = qb_scan_csv(&spec, &text);
        if (s != QB_OK) {
            std::cerr << "error: " << qb_last_error() << '\n';
            return status_exit(s);
        }
        std::fputs(text, stdout);
        qb_string_free(text);
        return kExitProper;
    }
    std::size_t rows = 0;
    const qb_status s = qb_scan_write_csv(&spec, args.out.c_str(), &rows);
    if (s != QB_OK) {
        std::cerr << "error: " << qb_last_error() << '\n';
        return status_exit(s);
    }
    std::cerr << "wrote " << rows << " rows to " << args.out << '\n';
    return kExitProper;
}

struct SolveArgs {
    std::string path;
    bool json = false;
};

int run_solve(const SolveArgs& args) {
    qb_problem* problem = nullptr;
    qb_status s = qb_problem_from_file(args.path.c_str(), &problem);
    if (s != QB_OK) {
        std::cerr << "error: " << qb_last_error() << '\n';
        return s == QB_ERR_IO ? kExitUsage : status_exit(s);
    }
    std::unique_ptr<qb_problem, decltype(&qb_problem_free)> problem_guard(problem, qb_problem_free);

    qb_solution* solution = nullptr;
    s = qb_problem_solve(problem, &solution);
    if (s != QB_OK) {
        std::cerr << "error: " << qb_last_error() << '\n';
        return status_exit(s);
    }
    std::unique_ptr<qb_solution, decltype(&qb_solution_free)> solution_guard(solution, qb_solution_free);

    qb_verdict verdict;
    check(qb_solution_verdict(solution, &verdict));
    if (args.json) {
        const char* text = nullptr;
        check(qb_solution_json(solution, &text));
        std::printf("%s\n", text);
        return verdict_exit(verdict);
    }

    std::size_t joint = 0, dim = 0, witness = 0;
    check(qb_problem_joint_size(problem, &joint));
    check(qb_solution_homogeneous_dim(solution, &dim));
    check(qb_solution_witness_size(solution, &witness));
    std::printf("status               %s\n", qb_verdict_name(verdict));
    std::printf("joint size           %zu\n", joint);
    std::printf("homogeneous dim      %zu\n", dim);
    if (witness > 0) {
        std::printf("witness\n");
        for (std::size_t i = 0; i < witness; ++i) {
            const char* label = nullptr;
            const char* fraction = nullptr;
            check(qb_solution_outcome_label(solution, i, &label));
            check(qb_solution_witness_entry(solution, i, &fraction, nullptr));
            std::printf("  %-24s %s\n", label, fraction);
        }
    }
    return verdict_exit(verdict);
}

int run_reference_check(bool json) {
    qb_check* report = nullptr;
    check(qb_check_run(&report));
    std::unique_ptr<qb_check, decltype(&qb_check_free)> guard(report, qb_check_free);

    if (json) {
        const char* text = nullptr;
        check(qb_check_json(report, &text));
        std::printf("%s\n", text);
    } else {
        const std::size_t n = qb_check_count(report);
        std::size_t passed_count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const char* name = nullptr;
            const char* detail = nullptr;
            int passed = 0;
            check(qb_check_item(report, i, &name, &passed, &detail));
            passed_count += passed ? 1 : 0;
            std::printf("[%s] %-16s %s\n", passed ? "PASS" : "FAIL", name, detail);
        }
        std::printf("%zu/%zu checks passed\n", passed_count, n);
    }
    return qb_check_all_passed(report) ? kExitProper : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint quasiprobabilities and Bell inequalities for singlet-state measurements"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qb_version());

    SingletArgs singlet;
    auto* singlet_cmd = app.add_subcommand("singlet", "Analyse one choice of three measurement axes");
    singlet_cmd->add_option("--angles", singlet.angles, "Coplanar axis angles in degrees: A,B,C");
    singlet_cmd->add_option("--alpha", singlet.alpha, "Axis of A as x,y,z");
    singlet_cmd->add_option("--beta", singlet.beta, "Axis of B as x,y,z");
    singlet_cmd->add_option("--gamma", singlet.gamma, "Axis of C as x,y,z");
    singlet_cmd->add_option("--correlations", singlet.correlations,
                            "Correlations <AB>,<AC>,<BC> as decimals or p/q (exact)");
    singlet_cmd->add_option("--eps", singlet.eps, "Feasibility tolerance")->check(CLI::NonNegativeNumber);
    singlet_cmd->add_flag("--json", singlet.json, "Machine-readable output");
    singlet_cmd->add_flag("--exact", singlet.exact, "Round correlations to 1e-6 and decide in exact arithmetic");

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "Coplanar angle scan written as CSV (A fixed at 0 degrees)");
    scan_cmd->add_option("--ab", scan.ab, "Angle of B: START:STOP:STEP (stop exclusive) or a single angle")
        ->capture_default_str();
    scan_cmd->add_option("--ac", scan.ac, "Angle of C: START:STOP:STEP (stop exclusive) or a single angle")
        ->capture_default_str();
    scan_cmd->add_option("--eps", scan.eps, "Feasibility tolerance")->check(CLI::NonNegativeNumber);
    scan_cmd->add_option("--out", scan.out, "Output CSV path (default: stdout)");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Decide a general marginal problem from a JSON document");
    solve_cmd->add_option("path", solve.path, "Problem document")->required();
    solve_cmd->add_flag("--json", solve.json, "Machine-readable output");

    bool check_json = false;
    auto* check_cmd = app.add_subcommand("paper-check", "Recompute rank, kernels and pseudoinverse of the "
                                                         "constraint matrix and compare with the published values");
    check_cmd->add_flag("--json", check_json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (singlet_cmd->parsed()) return run_singlet(singlet);
        if (scan_cmd->parsed()) return run_scan(scan);
        if (solve_cmd->parsed()) return run_solve(solve);
        if (check_cmd->parsed()) return run_reference_check(check_json);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
