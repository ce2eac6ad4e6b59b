#include "quasibell/quasibell.h"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quasibell/bellcheck.hpp"
#include "quasibell/marginal.hpp"
#include "quasibell/problem_json.hpp"
#include "quasibell/quasi.hpp"
#include "quasibell/reference_check.hpp"
#include "quasibell/scan.hpp"
#include "quasibell/singlet.hpp"

using nlohmann::json;
namespace qbl = quasibell;

struct qb_analysis {
    bool exact = false;
    double eps = 1e-10;
    qbl::CorrelationTriple<double> corr;
    std::array<qbl::PairTable<double>, 3> tables{};
    std::array<double, 10> p{};
    std::array<double, 3> residuals{};
    bool consistent = false;
    qb_verdict verdict = QB_INCONSISTENT;
    std::array<double, 8> x0{};
    std::array<int, 8> xh{};
    double t_lo = 0.0, t_hi = 0.0, t_star = 0.0;
    bool has_witness = false;
    std::array<double, 8> witness{};
    qb_bell_verdict bell{};

    std::vector<std::string> corr_text, x0_text, witness_text, residual_text;
    std::string t_lo_text, t_hi_text, t_star_text, margin_text;
    std::string json_text;
};

struct qb_problem {
    qbl::MarginalProblem problem;
};

struct qb_solution {
    qbl::FeasibilityResult result;
    std::vector<std::string> fractions;
    std::vector<double> values;
    std::vector<std::string> labels;
    std::string json_text;
};

struct qb_check {
    qbl::CheckReport report;
    std::string json_text;
};

namespace {

thread_local std::string g_last_error;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NullArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <class F>
qb_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return QB_OK;
    } catch (const NullArgument& e) {
        g_last_error = e.what();
        return QB_ERR_NULL_ARGUMENT;
    } catch (const qbl::SchemaError& e) {
        g_last_error = e.what();
        return QB_ERR_SCHEMA;
    } catch (const qbl::JointSizeError& e) {
        g_last_error = e.what();
        return QB_ERR_SIZE_CAP;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return QB_ERR_IO;
    } catch (const std::out_of_range& e) {
        g_last_error = e.what();
        return QB_ERR_OUT_OF_RANGE;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return QB_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return QB_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return QB_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QB_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QB_ERR_INTERNAL;
    }
}

template <class T>
T& deref(T* p, const char* what) {
    if (!p) throw NullArgument(std::string("null argument: ") + what);
    return *p;
}

void check_index(std::size_t index, std::size_t size) {
    if (index >= size) throw std::out_of_range("index " + std::to_string(index) + " out of range");
}

std::string text(double v) { return qbl::format_number(v); }
std::string text(const qbl::Rational& v) { return v.to_string(); }

json value(double v) { return v; }
json value(const qbl::Rational& v) { return v.to_string(); }

qb_verdict to_c(qbl::Verdict v) {
    switch (v) {
        case qbl::Verdict::Proper: return QB_PROPER;
        case qbl::Verdict::QuasiOnly: return QB_QUASI_ONLY;
        case qbl::Verdict::Inconsistent: break;
    }
    return QB_INCONSISTENT;
}

template <class T>
json table_json(const qbl::PairTable<T>& t) {
    return json::array({value(t[0][0]), value(t[0][1]), value(t[1][0]), value(t[1][1])});
}

template <class T, std::size_t N>
json array_json(const std::array<T, N>& a) {
    json out = json::array();
    for (const auto& v : a) out.push_back(value(v));
    return out;
}

template <class T>
void fill_analysis(qb_analysis& out, const qbl::CorrelationTriple<T>& corr, const T& eps) {
    using qbl::to_double;
    const auto marginals = qbl::marginals_from_correlations(corr);
    const auto consistency = qbl::check_consistency(marginals.p_vector, eps);
    const auto classification = qbl::classify(marginals.p_vector, eps);
    const auto bell = qbl::bell_pair(corr, eps);

    out.corr = qbl::to_double(corr);
    const std::array<const qbl::PairTable<T>*, 3> tables{&marginals.pab, &marginals.pac, &marginals.pbc};
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) out.tables[k][a][b] = to_double((*tables[k])[a][b]);
    for (std::size_t i = 0; i < 10; ++i) out.p[i] = to_double(marginals.p_vector[i]);
    out.consistent = consistency.consistent;
    out.verdict = to_c(classification.tag);
    out.bell = {to_double(bell.ineq1_lhs), to_double(bell.ineq1_rhs), to_double(bell.ineq2_lhs),
                to_double(bell.ineq2_rhs), to_double(bell.margin),    bell.satisfied ? 1 : 0};

    out.corr_text = {text(corr.ab), text(corr.ac), text(corr.bc)};
    for (std::size_t i = 0; i < 3; ++i) {
        out.residuals[i] = to_double(consistency.residuals[i]);
        out.residual_text.push_back(text(consistency.residuals[i]));
    }
    out.margin_text = text(bell.margin);

    json doc;
    doc["mode"] = out.exact ? "exact" : "float";
    doc["eps"] = out.eps;
    doc["correlations"] = {{"ab", value(corr.ab)}, {"ac", value(corr.ac)}, {"bc", value(corr.bc)}};
    doc["pair_tables"] = {{"order", json::array({"++", "+-", "-+", "--"})},
                          {"ab", table_json(marginals.pab)},
                          {"ac", table_json(marginals.pac)},
                          {"bc", table_json(marginals.pbc)}};
    doc["p_vector"] = array_json(marginals.p_vector);
    doc["consistency"] = {{"consistent", consistency.consistent}, {"residuals", array_json(consistency.residuals)}};
    doc["classification"] = std::string(qbl::verdict_name(classification.tag));

    if (classification.family) {
        const auto& f = *classification.family;
        for (std::size_t i = 0; i < 8; ++i) {
            out.x0[i] = to_double(f.x0[i]);
            out.x0_text.push_back(text(f.x0[i]));
        }
        out.xh = f.xh;
        out.t_lo = to_double(f.t_lo);
        out.t_hi = to_double(f.t_hi);
        out.t_lo_text = text(f.t_lo);
        out.t_hi_text = text(f.t_hi);
        doc["family"] = {{"order", json::array({"+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"})},
                         {"x0", array_json(f.x0)},
                         {"xh", f.xh},
                         {"t_lo", value(f.t_lo)},
                         {"t_hi", value(f.t_hi)},
                         {"nonempty", f.has_proper_member(eps)}};
    } else {
        doc["family"] = nullptr;
    }
    if (classification.witness) {
        out.has_witness = true;
        out.t_star = to_double(classification.t_star);
        out.t_star_text = text(classification.t_star);
        for (std::size_t i = 0; i < 8; ++i) {
            out.witness[i] = to_double((*classification.witness)[i]);
            out.witness_text.push_back(text((*classification.witness)[i]));
        }
        doc["witness"] = {{"t_star", value(classification.t_star)}, {"x", array_json(*classification.witness)}};
    } else {
        doc["witness"] = nullptr;
    }
    doc["bell"] = {{"ineq1_lhs", value(bell.ineq1_lhs)}, {"ineq1_rhs", value(bell.ineq1_rhs)},
                   {"ineq2_lhs", value(bell.ineq2_lhs)}, {"ineq2_rhs", value(bell.ineq2_rhs)},
                   {"margin", value(bell.margin)},       {"satisfied", bell.satisfied}};
    out.json_text = doc.dump(2);
}

qb_analysis* analyze(const qbl::CorrelationTriple<double>& corr, const qb_options* options) {
    qb_options opts;
    qb_options_init(&opts);
    if (options) opts = *options;
    if (!(opts.eps >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");

    auto a = std::make_unique<qb_analysis>();
    a->exact = opts.exact != 0;
    a->eps = opts.eps;
    if (a->exact) {
        a->eps = 0.0;
        fill_analysis(*a, qbl::rationalize(corr), qbl::default_epsilon<qbl::Rational>());
    } else {
        fill_analysis(*a, corr, opts.eps);
    }
    return a.release();
}

std::string read_file(const char* path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open '") + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError(std::string("error reading '") + path + "'");
    return ss.str();
}

qbl::ScanSpec to_scan_spec(const qb_scan_spec& s) {
    return {{s.ab_start, s.ab_stop, s.ab_step}, {s.ac_start, s.ac_stop, s.ac_step}, s.eps};
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* qb_version(void) { return "0.1.0"; }

const char* qb_status_message(qb_status status) {
    switch (status) {
        case QB_OK: return "ok";
        case QB_ERR_NULL_ARGUMENT: return "null argument";
        case QB_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QB_ERR_SCHEMA: return "schema violation";
        case QB_ERR_SIZE_CAP: return "joint size cap exceeded";
        case QB_ERR_IO: return "i/o failure";
        case QB_ERR_OUT_OF_RANGE: return "index out of range";
        case QB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* qb_verdict_name(qb_verdict verdict) {
    switch (verdict) {
        case QB_INCONSISTENT: return "Inconsistent";
        case QB_QUASI_ONLY: return "QuasiOnly";
        case QB_PROPER: return "Proper";
    }
    return "Unknown";
}

const char* qb_last_error(void) { return g_last_error.c_str(); }

void qb_options_init(qb_options* options) {
    if (!options) return;
    options->eps = qbl::default_epsilon<double>();
    options->exact = 0;
}

void qb_string_free(char* text) { std::free(text); }

qb_status qb_analysis_from_directions(const qb_vec3* alpha, const qb_vec3* beta, const qb_vec3* gamma,
                                      const qb_options* options, qb_analysis** out) {
    return guarded([&] {
        const auto& a = deref(alpha, "alpha");
        const auto& b = deref(beta, "beta");
        const auto& c = deref(gamma, "gamma");
        auto& slot = deref(out, "out");
        const auto corr = qbl::singlet_correlations({a.x, a.y, a.z}, {b.x, b.y, b.z}, {c.x, c.y, c.z});
        slot = analyze(corr, options);
    });
}

qb_status qb_analysis_from_angles(double alpha_deg, double beta_deg, double gamma_deg, const qb_options* options,
                                  qb_analysis** out) {
    return guarded([&] {
        auto& slot = deref(out, "out");
        const auto corr = qbl::singlet_correlations(qbl::Direction::coplanar(alpha_deg),
                                                    qbl::Direction::coplanar(beta_deg),
                                                    qbl::Direction::coplanar(gamma_deg));
        slot = analyze(corr, options);
    });
}

qb_status qb_analysis_from_correlations(const char* ab, const char* ac, const char* bc, qb_analysis** out) {
    return guarded([&] {
        const qbl::CorrelationTriple<qbl::Rational> corr{qbl::Rational::parse(&deref(ab, "ab")),
                                                         qbl::Rational::parse(&deref(ac, "ac")),
                                                         qbl::Rational::parse(&deref(bc, "bc"))};
        auto& slot = deref(out, "out");
        auto a = std::make_unique<qb_analysis>();
        a->exact = true;
        a->eps = 0.0;
        fill_analysis(*a, corr, qbl::default_epsilon<qbl::Rational>());
        slot = a.release();
    });
}

void qb_analysis_free(qb_analysis* analysis) { delete analysis; }

int qb_analysis_is_exact(const qb_analysis* analysis) { return analysis && analysis->exact ? 1 : 0; }

qb_status qb_analysis_correlations(const qb_analysis* analysis, double out[3]) {
    return guarded([&] {
        const auto& a = deref(analysis, "analysis");
        deref(out, "out");
        out[0] = a.corr.ab;
        out[1] = a.corr.ac;
        out[2] = a.corr.bc;
    });
}

qb_status qb_analysis_pair_table(const qb_analysis* analysis, qb_pair pair, double out[4]) {
    return guarded([&] {
        const auto& a = deref(analysis, "analysis");
        deref(out, "out");
        const auto index = static_cast<std::size_t>(pair);
        check_index(index, 3);
        const auto& t = a.tables[index];
        out[0] = t[0][0];
        out[1] = t[0][1];
        out[2] = t[1][0];
        out[3] = t[1][1];
    });
}

qb_status qb_analysis_marginal_vector(const qb_analysis* analysis, double out[10]) {
    return guarded([&] {
        const auto& a = deref(analysis, "analysis");
        deref(out, "out");
        std::copy(a.p.begin(), a.p.end(), out);
    });
}

qb_status qb_analysis_residuals(const qb_analysis* analysis, double out[3], int* consistent) {
    return guarded([&] {
        const auto& a = deref(analysis, "analysis");
        deref(out, "out");
        std::copy(a.residuals.begin(), a.residuals.end(), out);
        if (consistent) *consistent = a.consistent ? 1 : 0;
    });
}

qb_status qb_analysis_verdict(const qb_analysis* analysis, qb_verdict* out) {
    return guarded([&] { deref(out, "out") = deref(analysis, "analysis").verdict; });
}

qb_status qb_analysis_x0(const qb_analysis* analysis, double out[8]) {
    return guarded([&] {
        const auto& a = deref(analysis, "analysis");
        deref(out, "out");
        if (!a.consistent) throw std::invalid_argument("inconsistent marginals have no quasiprobability family");
        std::copy(a.x0.begin(), a.x0.end(), out);
    });
}

qb_status qb_analysis_homogeneous(const qb_analysis* analysis, int out[8]) {
    return guarded([&] {
        deref(analysis, "analysis");
        deref(out, "out");
        const auto& xh = qbl::homogeneous_direction();
        std::copy(xh.begin(), xh.end(), out);
    });
}

qb_status qb_analysis_interval(const qb_analysis* analysis, double* t_lo, double* t_hi) {
    return guarded([&] {
        const auto& a = deref(analysis, "analysis");
        if (!a.consistent) throw std::invalid_argument("inconsistent marginals have no quasiprobability family");
        deref(t_lo, "t_lo") = a.t_lo;
        deref(t_hi, "t_hi") = a.t_hi;
    });
}

qb_status qb_analysis_witness(const qb_analysis* analysis, double out[8], double* t_star, int* present) {
    return guarded([&] {
        const auto& a = deref(analysis, "analysis");
        deref(present, "present") = a.has_witness ? 1 : 0;
        if (!a.has_witness) return;
        if (out) std::copy(a.witness.begin(), a.witness.end(), out);
        if (t_star) *t_star = a.t_star;
    });
}

qb_status qb_analysis_bell(const qb_analysis* analysis, qb_bell_verdict* out) {
    return guarded([&] { deref(out, "out") = deref(analysis, "analysis").bell; });
}

qb_status qb_analysis_text(const qb_analysis* analysis, qb_field field, size_t index, const char** out) {
    return guarded([&] {
        const auto& a = deref(analysis, "analysis");
        auto& slot = deref(out, "out");
        auto pick = [&](const std::vector<std::string>& v) -> const char* {
            check_index(index, v.size());
            return v[index].c_str();
        };
        auto scalar = [&](const std::string& s) -> const char* {
            check_index(index, s.empty() ? 0 : 1);
            return s.c_str();
        };
        switch (field) {
            case QB_FIELD_CORRELATION: slot = pick(a.corr_text); break;
            case QB_FIELD_X0: slot = pick(a.x0_text); break;
            case QB_FIELD_T_LO: slot = scalar(a.t_lo_text); break;
            case QB_FIELD_T_HI: slot = scalar(a.t_hi_text); break;
            case QB_FIELD_T_STAR: slot = scalar(a.t_star_text); break;
            case QB_FIELD_WITNESS: slot = pick(a.witness_text); break;
            case QB_FIELD_MARGIN: slot = scalar(a.margin_text); break;
            case QB_FIELD_RESIDUAL: slot = pick(a.residual_text); break;
            default: throw std::invalid_argument("unknown field");
        }
    });
}

qb_status qb_analysis_json(const qb_analysis* analysis, const char** out) {
    return guarded([&] { deref(out, "out") = deref(analysis, "analysis").json_text.c_str(); });
}

void qb_scan_spec_init(qb_scan_spec* spec) {
    if (!spec) return;
    *spec = {0.0, 360.0, 1.0, 0.0, 360.0, 1.0, qbl::default_epsilon<double>()};
}

qb_status qb_scan_write_csv(const qb_scan_spec* spec, const char* path, size_t* rows_written) {
    return guarded([&] {
        const auto rows = qbl::run_scan(to_scan_spec(deref(spec, "spec")));
        const char* p = &deref(path, "path");
        std::ofstream file(p, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError(std::string("cannot open '") + p + "' for writing");
        qbl::write_scan_csv(file, rows);
        file.flush();
        if (!file) throw IoError(std::string("error writing '") + p + "'");
        if (rows_written) *rows_written = rows.size();
    });
}

qb_status qb_scan_csv(const qb_scan_spec* spec, char** out_text) {
    return guarded([&] {
        auto& slot = deref(out_text, "out_text");
        std::ostringstream os;
        qbl::write_scan_csv(os, qbl::run_scan(to_scan_spec(deref(spec, "spec"))));
        slot = copy_string(os.str());
    });
}

qb_status qb_problem_from_json(const char* text, qb_problem** out) {
    return guarded([&] {
        auto& slot = deref(out, "out");
        slot = new qb_problem{qbl::parse_problem_document(&deref(text, "text"))};
    });
}

qb_status qb_problem_from_file(const char* path, qb_problem** out) {
    return guarded([&] {
        auto& slot = deref(out, "out");
        slot = new qb_problem{qbl::parse_problem_document(read_file(&deref(path, "path")))};
    });
}

void qb_problem_free(qb_problem* problem) { delete problem; }

qb_status qb_problem_joint_size(const qb_problem* problem, size_t* out) {
    return guarded([&] { deref(out, "out") = deref(problem, "problem").problem.joint_size(); });
}

qb_status qb_problem_solve(const qb_problem* problem, qb_solution** out) {
    return guarded([&] {
        const auto& p = deref(problem, "problem").problem;
        auto& slot = deref(out, "out");
        auto s = std::make_unique<qb_solution>();
        s->result = qbl::solve_problem(p);
        if (s->result.witness) {
            const auto cards = p.cardinalities();
            for (std::size_t j = 0; j < s->result.witness->size(); ++j) {
                const auto& v = (*s->result.witness)[j];
                s->fractions.push_back(v.to_string());
                s->values.push_back(v.to_double());
                const auto outcome = qbl::joint_outcome(j, cards);
                std::string label;
                for (std::size_t k = 0; k < outcome.size(); ++k) {
                    if (k) label += ' ';
                    label += p.observables()[k].name + "=" + std::to_string(outcome[k]);
                }
                s->labels.push_back(std::move(label));
            }
        }
        s->json_text = qbl::solution_document(p, s->result);
        slot = s.release();
    });
}

void qb_solution_free(qb_solution* solution) { delete solution; }

qb_status qb_solution_verdict(const qb_solution* solution, qb_verdict* out) {
    return guarded([&] { deref(out, "out") = to_c(deref(solution, "solution").result.status); });
}

qb_status qb_solution_homogeneous_dim(const qb_solution* solution, size_t* out) {
    return guarded([&] { deref(out, "out") = deref(solution, "solution").result.homogeneous_dim; });
}

qb_status qb_solution_witness_size(const qb_solution* solution, size_t* out) {
    return guarded([&] { deref(out, "out") = deref(solution, "solution").fractions.size(); });
}

qb_status qb_solution_witness_entry(const qb_solution* solution, size_t index, const char** fraction,
                                    double* value) {
    return guarded([&] {
        const auto& s = deref(solution, "solution");
        check_index(index, s.fractions.size());
        if (fraction) *fraction = s.fractions[index].c_str();
        if (value) *value = s.values[index];
    });
}

qb_status qb_solution_outcome_label(const qb_solution* solution, size_t index, const char** out) {
    return guarded([&] {
        const auto& s = deref(solution, "solution");
        check_index(index, s.labels.size());
        deref(out, "out") = s.labels[index].c_str();
    });
}

qb_status qb_solution_json(const qb_solution* solution, const char** out) {
    return guarded([&] { deref(out, "out") = deref(solution, "solution").json_text.c_str(); });
}

qb_status qb_check_run(qb_check** out) {
    return guarded([&] {
        auto& slot = deref(out, "out");
        auto c = std::make_unique<qb_check>();
        c->report = qbl::run_reference_check();
        json items = json::array();
        for (const auto& item : c->report.items) {
            items.push_back({{"name", item.name}, {"passed", item.passed}, {"detail", item.detail}});
        }
        c->json_text = json{{"all_passed", c->report.all_passed()}, {"items", items}}.dump(2);
        slot = c.release();
    });
}

void qb_check_free(qb_check* check) { delete check; }

size_t qb_check_count(const qb_check* check) { return check ? check->report.items.size() : 0; }

qb_status qb_check_item(const qb_check* check, size_t index, const char** name, int* passed, const char** detail) {
    return guarded([&] {
        const auto& c = deref(check, "check");
        check_index(index, c.report.items.size());
        const auto& item = c.report.items[index];
        if (name) *name = item.name.c_str();
        if (passed) *passed = item.passed ? 1 : 0;
        if (detail) *detail = item.detail.c_str();
    });
}

int qb_check_all_passed(const qb_check* check) { return check && check->report.all_passed() ? 1 : 0; }

qb_status qb_check_json(const qb_check* check, const char** out) {
    return guarded([&] { deref(out, "out") = deref(check, "check").json_text.c_str(); });
}

}  // extern "C"
