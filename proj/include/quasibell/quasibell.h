/*
 * quasibell C API.
 *
 * Joint quasiprobabilities for three +-1 observables with prescribed pair
 * marginals, the singlet-state instance of that problem, and exact
 * feasibility for general finite marginal problems.
 *
 * Every call returns a qb_status; on failure qb_last_error() holds a message
 * for the calling thread. Handles are opaque and owned by the caller, who
 * releases them with the matching *_free function. Strings returned through
 * `const char**` stay valid until the handle that produced them is freed.
 */
#ifndef QUASIBELL_H
#define QUASIBELL_H

#include <stddef.h>

#if defined(QB_BUILDING_LIBRARY)
#define QB_API __attribute__((visibility("default")))
#else
#define QB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qb_status {
    QB_OK = 0,
    QB_ERR_NULL_ARGUMENT = 1,
    QB_ERR_INVALID_ARGUMENT = 2,
    QB_ERR_SCHEMA = 3,
    QB_ERR_SIZE_CAP = 4,
    QB_ERR_IO = 5,
    QB_ERR_OUT_OF_RANGE = 6,
    QB_ERR_INTERNAL = 7
} qb_status;

typedef enum qb_verdict {
    QB_INCONSISTENT = 0, /* no joint quasiprobability matches the marginals */
    QB_QUASI_ONLY = 1,   /* quasiprobabilities exist, none non-negative */
    QB_PROPER = 2        /* a genuine joint probability exists */
} qb_verdict;

typedef enum qb_pair { QB_PAIR_AB = 0, QB_PAIR_AC = 1, QB_PAIR_BC = 2 } qb_pair;

/* Quantities of an analysis that have an exact text form. */
typedef enum qb_field {
    QB_FIELD_CORRELATION = 0, /* index 0..2: ab, ac, bc */
    QB_FIELD_X0 = 1,          /* index 0..7 */
    QB_FIELD_T_LO = 2,
    QB_FIELD_T_HI = 3,
    QB_FIELD_T_STAR = 4,
    QB_FIELD_WITNESS = 5, /* index 0..7, Proper only */
    QB_FIELD_MARGIN = 6,
    QB_FIELD_RESIDUAL = 7 /* index 0..2 */
} qb_field;

typedef struct qb_vec3 {
    double x, y, z;
} qb_vec3;

typedef struct qb_options {
    double eps; /* feasibility tolerance for floating-point analyses (default 1e-10) */
    int exact;  /* nonzero: round correlations to multiples of 1e-6 and decide exactly */
} qb_options;

typedef struct qb_bell_verdict {
    double ineq1_lhs; /* 1 + <AB> */
    double ineq1_rhs; /* |<AC> - <BC>| */
    double ineq2_lhs; /* 1 - <AB> */
    double ineq2_rhs; /* |<AC> + <BC>| */
    double margin;    /* min over both of lhs - rhs */
    int satisfied;
} qb_bell_verdict;

/* Coplanar scan; angle ranges in degrees, stop exclusive, stop == start for one point. */
typedef struct qb_scan_spec {
    double ab_start, ab_stop, ab_step;
    double ac_start, ac_stop, ac_step;
    double eps;
} qb_scan_spec;

typedef struct qb_analysis qb_analysis;
typedef struct qb_problem qb_problem;
typedef struct qb_solution qb_solution;
typedef struct qb_check qb_check;

QB_API const char* qb_version(void);
QB_API const char* qb_status_message(qb_status status);
QB_API const char* qb_verdict_name(qb_verdict verdict);
QB_API const char* qb_last_error(void);
QB_API void qb_options_init(qb_options* options);
QB_API void qb_string_free(char* text);

/* ---- singlet analysis ---------------------------------------------------- */

QB_API qb_status qb_analysis_from_directions(const qb_vec3* alpha, const qb_vec3* beta, const qb_vec3* gamma,
                                             const qb_options* options, qb_analysis** out);
/* Coplanar axes at the given angles (degrees) from +z toward +x. */
QB_API qb_status qb_analysis_from_angles(double alpha_deg, double beta_deg, double gamma_deg,
                                         const qb_options* options, qb_analysis** out);
/* Correlations given directly as decimal or "p/q" strings; always exact. */
QB_API qb_status qb_analysis_from_correlations(const char* ab, const char* ac, const char* bc, qb_analysis** out);
QB_API void qb_analysis_free(qb_analysis* analysis);

QB_API int qb_analysis_is_exact(const qb_analysis* analysis);
QB_API qb_status qb_analysis_correlations(const qb_analysis* analysis, double out[3]);
/* Entries ordered ++, +-, -+, --. The BC table is the (B2, C2) distribution. */
QB_API qb_status qb_analysis_pair_table(const qb_analysis* analysis, qb_pair pair, double out[4]);
QB_API qb_status qb_analysis_marginal_vector(const qb_analysis* analysis, double out[10]);
QB_API qb_status qb_analysis_residuals(const qb_analysis* analysis, double out[3], int* consistent);
QB_API qb_status qb_analysis_verdict(const qb_analysis* analysis, qb_verdict* out);
QB_API qb_status qb_analysis_x0(const qb_analysis* analysis, double out[8]);
QB_API qb_status qb_analysis_homogeneous(const qb_analysis* analysis, int out[8]);
QB_API qb_status qb_analysis_interval(const qb_analysis* analysis, double* t_lo, double* t_hi);
/* *present is 0 unless the verdict is Proper. */
QB_API qb_status qb_analysis_witness(const qb_analysis* analysis, double out[8], double* t_star, int* present);
QB_API qb_status qb_analysis_bell(const qb_analysis* analysis, qb_bell_verdict* out);
/* Exact "p/q" text in exact mode, 12 significant digits otherwise. */
QB_API qb_status qb_analysis_text(const qb_analysis* analysis, qb_field field, size_t index, const char** out);
QB_API qb_status qb_analysis_json(const qb_analysis* analysis, const char** out);

/* ---- scans --------------------------------------------------------------- */

QB_API void qb_scan_spec_init(qb_scan_spec* spec);
/* CSV with header theta_ab,theta_ac,corr_ab,corr_ac,corr_bc,margin,classification. */
QB_API qb_status qb_scan_write_csv(const qb_scan_spec* spec, const char* path, size_t* rows_written);
/* Same CSV into a new string; release with qb_string_free. */
QB_API qb_status qb_scan_csv(const qb_scan_spec* spec, char** out_text);

/* ---- general marginal problems ------------------------------------------ */

QB_API qb_status qb_problem_from_json(const char* text, qb_problem** out);
QB_API qb_status qb_problem_from_file(const char* path, qb_problem** out);
QB_API void qb_problem_free(qb_problem* problem);
QB_API qb_status qb_problem_joint_size(const qb_problem* problem, size_t* out);
QB_API qb_status qb_problem_solve(const qb_problem* problem, qb_solution** out);
QB_API void qb_solution_free(qb_solution* solution);
QB_API qb_status qb_solution_verdict(const qb_solution* solution, qb_verdict* out);
QB_API qb_status qb_solution_homogeneous_dim(const qb_solution* solution, size_t* out);
/* 0 when there is no witness. */
QB_API qb_status qb_solution_witness_size(const qb_solution* solution, size_t* out);
QB_API qb_status qb_solution_witness_entry(const qb_solution* solution, size_t index, const char** fraction,
                                           double* value);
/* e.g. "A=0 B=1" */
QB_API qb_status qb_solution_outcome_label(const qb_solution* solution, size_t index, const char** out);
QB_API qb_status qb_solution_json(const qb_solution* solution, const char** out);

/* ---- regression against the published matrices --------------------------- */

QB_API qb_status qb_check_run(qb_check** out);
QB_API void qb_check_free(qb_check* check);
QB_API size_t qb_check_count(const qb_check* check);
QB_API qb_status qb_check_item(const qb_check* check, size_t index, const char** name, int* passed,
                               const char** detail);
QB_API int qb_check_all_passed(const qb_check* check);
QB_API qb_status qb_check_json(const qb_check* check, const char** out);

#ifdef __cplusplus
}
#endif

#endif /* QUASIBELL_H */
