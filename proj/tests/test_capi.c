/* Exercises the C API from a C translation unit. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "quasibell/quasibell.h"

static int failures = 0;

#define CHECK(cond)                                                       \
    do {                                                                  \
        if (!(cond)) {                                                    \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                   \
        }                                                                 \
    } while (0)

static void test_canonical_violation(void) {
    qb_options opt;
    qb_analysis* a = NULL;
    double corr[3], table[4], lo, hi;
    qb_verdict v;
    qb_bell_verdict bell;
    const char* text = NULL;
    int present = 1;

    qb_options_init(&opt);
    CHECK(opt.eps == 1e-10 && opt.exact == 0);
    CHECK(qb_analysis_from_angles(0, 60, 120, &opt, &a) == QB_OK);
    CHECK(qb_analysis_correlations(a, corr) == QB_OK);
    CHECK(fabs(corr[0] + 0.5) < 1e-12 && fabs(corr[1] - 0.5) < 1e-12 && fabs(corr[2] + 0.5) < 1e-12);
    CHECK(qb_analysis_pair_table(a, QB_PAIR_AB, table) == QB_OK);
    CHECK(fabs(table[0] - 0.125) < 1e-12);
    CHECK(qb_analysis_verdict(a, &v) == QB_OK && v == QB_QUASI_ONLY);
    CHECK(qb_analysis_interval(a, &lo, &hi) == QB_OK && lo > hi);
    CHECK(qb_analysis_witness(a, NULL, NULL, &present) == QB_OK && present == 0);
    CHECK(qb_analysis_bell(a, &bell) == QB_OK && fabs(bell.margin + 0.5) < 1e-12 && !bell.satisfied);
    CHECK(qb_analysis_json(a, &text) == QB_OK && text && text[0] == '{');
    CHECK(qb_analysis_text(a, QB_FIELD_X0, 8, &text) == QB_ERR_OUT_OF_RANGE);
    qb_analysis_free(a);

    opt.exact = 1;
    CHECK(qb_analysis_from_angles(0, 60, 120, &opt, &a) == QB_OK);
    CHECK(qb_analysis_is_exact(a));
    CHECK(qb_analysis_text(a, QB_FIELD_T_LO, 0, &text) == QB_OK && strcmp(text, "1/16") == 0);
    CHECK(qb_analysis_text(a, QB_FIELD_MARGIN, 0, &text) == QB_OK && strcmp(text, "-1/2") == 0);
    qb_analysis_free(a);
}

static void test_boundary_and_errors(void) {
    qb_vec3 alpha = {1, 0, 0}, beta = {0, 1, 0}, gamma = {-1, 0, 0}, zero = {0, 0, 0};
    qb_analysis* a = NULL;
    qb_verdict v;
    double w[8], t_star;
    int present = 0, i;
    double sum = 0;

    CHECK(qb_analysis_from_directions(&alpha, &beta, &gamma, NULL, &a) == QB_OK);
    CHECK(qb_analysis_verdict(a, &v) == QB_OK && v == QB_PROPER);
    CHECK(qb_analysis_witness(a, w, &t_star, &present) == QB_OK && present);
    for (i = 0; i < 8; ++i) {
        CHECK(w[i] >= -1e-12);
        sum += w[i];
    }
    CHECK(fabs(sum - 1) < 1e-12);
    qb_analysis_free(a);

    a = NULL;
    CHECK(qb_analysis_from_directions(&alpha, &zero, &gamma, NULL, &a) == QB_ERR_INVALID_ARGUMENT);
    CHECK(a == NULL);
    CHECK(strlen(qb_last_error()) > 0);
    CHECK(qb_analysis_from_angles(0, 0, 0, NULL, NULL) == QB_ERR_NULL_ARGUMENT);
    CHECK(qb_analysis_from_correlations("1/2", "2", "0", &a) == QB_ERR_INVALID_ARGUMENT);
    CHECK(qb_analysis_from_correlations("-1/2", "1/2", "-1/2", &a) == QB_OK);
    CHECK(qb_analysis_verdict(a, &v) == QB_OK && v == QB_QUASI_ONLY);
    qb_analysis_free(a);
    qb_analysis_free(NULL);
    CHECK(strcmp(qb_verdict_name(QB_INCONSISTENT), "Inconsistent") == 0);
    CHECK(strlen(qb_status_message(QB_ERR_SCHEMA)) > 0);
}

static void test_problem(void) {
    const char* doc =
        "{\"schema\": 1, \"observables\": [{\"name\": \"A\", \"cardinality\": 2}, {\"name\": \"B\", \"cardinality\": 2}],"
        " \"marginals\": [{\"over\": [\"A\"], \"table\": [\"3/10\", \"7/10\"]}, {\"over\": [\"B\"], \"table\": [\"3/5\", \"2/5\"]}]}";
    qb_problem* p = NULL;
    qb_solution* s = NULL;
    size_t n = 0, i;
    qb_verdict v;
    const char* frac = NULL;
    const char* label = NULL;
    double value, total = 0;

    CHECK(qb_problem_from_json(doc, &p) == QB_OK);
    CHECK(qb_problem_joint_size(p, &n) == QB_OK && n == 4);
    CHECK(qb_problem_solve(p, &s) == QB_OK);
    CHECK(qb_solution_verdict(s, &v) == QB_OK && v == QB_PROPER);
    CHECK(qb_solution_witness_size(s, &n) == QB_OK && n == 4);
    for (i = 0; i < n; ++i) {
        CHECK(qb_solution_witness_entry(s, i, &frac, &value) == QB_OK && frac != NULL);
        total += value;
    }
    CHECK(fabs(total - 1) < 1e-15);
    CHECK(qb_solution_outcome_label(s, 1, &label) == QB_OK && strcmp(label, "A=0 B=1") == 0);
    CHECK(qb_solution_witness_entry(s, 4, &frac, &value) == QB_ERR_OUT_OF_RANGE);
    qb_solution_free(s);
    qb_problem_free(p);

    p = NULL;
    CHECK(qb_problem_from_json("{\"schema\": 1}", &p) == QB_ERR_SCHEMA && p == NULL);
    CHECK(qb_problem_from_file("/nonexistent/problem.json", &p) == QB_ERR_IO);
    CHECK(strstr(qb_last_error(), "/nonexistent/problem.json") != NULL);
}

static void test_scan_and_check(void) {
    qb_scan_spec spec;
    char* csv = NULL;
    qb_check* c = NULL;
    size_t rows = 0;
    const char* name = NULL;
    const char* detail = NULL;
    int passed = 0;

    qb_scan_spec_init(&spec);
    spec.ab_start = spec.ab_stop = 60;
    spec.ac_start = spec.ac_stop = 120;
    CHECK(qb_scan_csv(&spec, &csv) == QB_OK);
    CHECK(csv && strstr(csv, "60,120,-0.5,0.5,-0.5,-0.5,QuasiOnly") != NULL);
    qb_string_free(csv);
    CHECK(qb_scan_write_csv(&spec, "/nonexistent/dir/out.csv", &rows) == QB_ERR_IO);
    spec.ab_step = 0;
    spec.ab_stop = 70;
    CHECK(qb_scan_csv(&spec, &csv) == QB_ERR_INVALID_ARGUMENT);

    CHECK(qb_check_run(&c) == QB_OK);
    CHECK(qb_check_count(c) == 4);
    CHECK(qb_check_all_passed(c));
    CHECK(qb_check_item(c, 3, &name, &passed, &detail) == QB_OK && passed && strcmp(name, "pseudoinverse") == 0);
    qb_check_free(c);
}

int main(void) {
    test_canonical_violation();
    test_boundary_and_errors();
    test_problem();
    test_scan_and_check();
    printf("%s (%d failures)\n", failures ? "FAILED" : "ok", failures);
    return failures ? 1 : 0;
}
