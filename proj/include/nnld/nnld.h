/*
 * C interface to libnnld.
 *
 * Every function returns an nnld_status; results come back through out
 * parameters.  On failure nnld_last_error() describes the problem (the
 * message is per thread and valid until the next failing call).  Strings
 * returned through `char**` belong to the caller and are released with
 * nnld_string_free.  Rational numbers cross the boundary as "num/den" text.
 * A max_ops of 0 selects the default budget (1e9 elementary operations).
 */
#ifndef NNLD_H
#define NNLD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nnld_status {
    NNLD_OK = 0,
    NNLD_ERR_INVALID = 1,
    NNLD_ERR_CAPACITY = 2,
    NNLD_ERR_PRECONDITION = 3,
    NNLD_ERR_BUDGET = 4,
    NNLD_ERR_UNSUPPORTED = 5,
    NNLD_ERR_REFUSED = 6,
    NNLD_ERR_PARSE = 7,
    NNLD_ERR_IO = 8,
    NNLD_ERR_INTERNAL = 9
} nnld_status;

typedef enum nnld_guarantee { NNLD_GUARANTEE_NONE = 0, NNLD_GUARANTEE_NNLD = 1, NNLD_GUARANTEE_NPLD = 2 } nnld_guarantee;

typedef enum nnld_verdict {
    NNLD_VERDICT_CERTIFIED_NNLD = 0,
    NNLD_VERDICT_CERTIFIED_NPLD = 1,
    NNLD_VERDICT_REFUTED = 2,
    NNLD_VERDICT_STAR_VALUE = 3
} nnld_verdict;

typedef struct nnld_pointset nnld_pointset;
typedef struct nnld_report nnld_report;
typedef struct nnld_netspec nnld_netspec;
typedef struct nnld_search nnld_search;
typedef struct nnld_integrand nnld_integrand;
typedef struct nnld_bracket nnld_bracket;

const char* nnld_last_error(void);
const char* nnld_status_name(nnld_status s);
void nnld_string_free(char* s);

/* Point sets */
nnld_status nnld_grid_1d(int64_t n, nnld_pointset** out);
nnld_status nnld_shifted_grid_1d(int64_t n, nnld_pointset** out);
nnld_status nnld_hammersley(int b, int m, nnld_pointset** out);
/* images: d rows of m one-based permutation images */
nnld_status nnld_permutation_net(int b, int m, int d, const int* images, nnld_pointset** out);
nnld_status nnld_digital_net(const nnld_netspec* spec, nnld_pointset** out);
nnld_status nnld_rank1_lattice_powers(int b, int m, int d, nnld_pointset** out);
nnld_status nnld_rank1_lattice(int64_t n, int d, const int64_t* g, nnld_pointset** out);
nnld_status nnld_diagonal_lattice(int64_t n, int d, nnld_pointset** out);
nnld_status nnld_cyclic_diag_subgroup(int b, int m, int d, nnld_pointset** out);
/* numerators: n rows of d values over den */
nnld_status nnld_pointset_from_numerators(int d, int64_t den, int64_t n, const int64_t* numerators,
                                          nnld_pointset** out);
nnld_status nnld_reflect(const nnld_pointset* p, nnld_pointset** out);
nnld_status nnld_shift_reflect(const nnld_pointset* p, nnld_pointset** out);
nnld_status nnld_npld_transform(const nnld_pointset* p, nnld_pointset** out);
nnld_status nnld_cartesian_product(const nnld_pointset* p, const nnld_pointset* q, nnld_pointset** out);
void nnld_pointset_free(nnld_pointset* p);

int nnld_pointset_dim(const nnld_pointset* p);
int64_t nnld_pointset_size(const nnld_pointset* p);
int64_t nnld_pointset_denominator(const nnld_pointset* p);
nnld_status nnld_pointset_numerator(const nnld_pointset* p, int64_t i, int j, int64_t* out);
/* Owned by the point set. */
const char* nnld_pointset_provenance(const nnld_pointset* p);
nnld_guarantee nnld_pointset_guarantee(const nnld_pointset* p);
nnld_status nnld_pointset_same_multiset(const nnld_pointset* p, const nnld_pointset* q, int* out);

nnld_status nnld_pointset_to_csv(const nnld_pointset* p, char** out);
nnld_status nnld_pointset_from_csv(const char* text, nnld_pointset** out);
nnld_status nnld_pointset_read_csv_file(const char* path, nnld_pointset** out);
nnld_status nnld_pointset_write_csv_file(const nnld_pointset* p, const char* path);

/* Discrepancy */
nnld_status nnld_local_disc(const nnld_pointset* p, const char* const* z, int closed, char** out);
nnld_status nnld_verify_nnld(const nnld_pointset* p, uint64_t max_ops, nnld_report** out);
nnld_status nnld_verify_npld(const nnld_pointset* p, uint64_t max_ops, nnld_report** out);
nnld_status nnld_star_discrepancy(const nnld_pointset* p, uint64_t max_ops, char** value, nnld_report** out);
nnld_status nnld_hammersley_star_disc_formula(int m, char** out);
/* One line per check: "<name>: pass|fail|n/a"; all_passed ignores n/a. */
nnld_status nnld_structural_prechecks(const nnld_pointset* p, int* all_passed, char** text);
nnld_status nnld_is_projection_regular(const nnld_pointset* p, int* out);

nnld_verdict nnld_report_verdict(const nnld_report* r);
int nnld_report_certified(const nnld_report* r);
uint64_t nnld_report_boxes(const nnld_report* r);
nnld_status nnld_report_delta(const nnld_report* r, char** out);
nnld_status nnld_report_corner(const nnld_report* r, int j, char** out);
/* "verdict=... witness=... delta=... boxes=..." */
nnld_status nnld_report_format(const nnld_report* r, char** out);
void nnld_report_free(nnld_report* r);

/* Net quality */
/* entries: d matrices of m*m row-major digits */
nnld_status nnld_netspec_create(int b, int m, int d, const int* entries, nnld_netspec** out);
nnld_status nnld_netspec_from_permutations(int b, int m, int d, const int* images, nnld_netspec** out);
/* Identity and reversed identity. */
nnld_status nnld_netspec_hammersley(int b, int m, nnld_netspec** out);
nnld_status nnld_netspec_parse(int b, const char* text, nnld_netspec** out);
int nnld_netspec_dim(const nnld_netspec* s);
int nnld_netspec_m(const nnld_netspec* s);
int nnld_netspec_base(const nnld_netspec* s);
void nnld_netspec_free(nnld_netspec* s);

nnld_status nnld_rho(const nnld_netspec* s, int* out);
nnld_status nnld_verify_net_parameter(const nnld_pointset* p, int b, int m, int t, uint64_t max_ops, int* out);
nnld_status nnld_exact_t(const nnld_pointset* p, int b, int m, uint64_t max_ops, int* out);
/* d in {3,4}; writes d*d*l images into a buffer of `capacity` ints. */
nnld_status nnld_perm_ordering(int d, int l, int* images, size_t capacity);
nnld_status nnld_t_lower_bound_perm(int d, int m, int* out);
/* "rho=<r> t=<t> t_verified=<t|na> bound_ok=<bool>" */
nnld_status nnld_quality_report(const nnld_netspec* s, int verify_t, uint64_t max_ops, char** out);

nnld_status nnld_search_nnld_generators(int m, int b, uint64_t max_ops, int check_prefilter, nnld_search** out);
size_t nnld_search_count(const nnld_search* s);
nnld_status nnld_search_matrix(const nnld_search* s, size_t i, char** out);
uint64_t nnld_search_examined(const nnld_search* s);
uint64_t nnld_search_passed_prefilter(const nnld_search* s);
uint64_t nnld_search_nonsingular_after_prefilter(const nnld_search* s);
int nnld_search_prefilter_checked(const nnld_search* s);
uint64_t nnld_search_prefilter_misses(const nnld_search* s);
void nnld_search_free(nnld_search* s);

/* Integrands */
typedef double (*nnld_eval_fn)(const double* x, int d, void* ctx);

nnld_status nnld_integrand_product(int d, nnld_integrand** out);
nnld_status nnld_integrand_bvn(double rho, nnld_integrand** out);
nnld_status nnld_integrand_constant(int d, double c, nnld_integrand** out);
/* count atoms; locations holds count rows of d values */
nnld_status nnld_integrand_table(int d, size_t count, const double* weights, const double* locations,
                                 nnld_integrand** out);
/* Rows "w,a_1,...,a_d". */
nnld_status nnld_integrand_table_csv(int d, const char* text, nnld_integrand** out);
/* Caller promises x -> fn(1 - x) is completely monotone; ctx must outlive the handle. */
nnld_status nnld_integrand_callback(int d, nnld_eval_fn fn, void* ctx, double f0, double f1,
                                    int nu_absolutely_continuous, double eval_error, const char* name,
                                    nnld_integrand** out);
/* "bvn07", "productD" (D = 1..9), "const" (value 1, d = 1). */
nnld_status nnld_integrand_named(const char* name, nnld_integrand** out);
void nnld_integrand_free(nnld_integrand* f);
int nnld_integrand_dim(const nnld_integrand* f);
const char* nnld_integrand_name(const nnld_integrand* f);
nnld_status nnld_integrand_eval(const nnld_integrand* f, const double* x, double* out);
/* has_exact is set to 0 when no exact integral is known. */
nnld_status nnld_integrand_exact(const nnld_integrand* f, int* has_exact, double* out);

nnld_status nnld_bvn_cdf(double x1, double x2, double rho, double* out);
nnld_status nnld_vhk_2d_smooth(const nnld_integrand* f, double* out);
nnld_status nnld_kh_interval(const nnld_integrand* f, const nnld_pointset* p, const char* dstar,
                             int use_variation, double variation, double* lo, double* hi);
/* worst_subset receives e.g. "{2}" */
nnld_status nnld_check_cm_sampled(const nnld_integrand* f, uint64_t trials, uint64_t seed, int* passed,
                                  double* worst, char** worst_subset);

/* Bounds; certified is 1 when checked here, 0 when trusted by construction. */
nnld_status nnld_upper_bound(const nnld_integrand* f, const nnld_pointset* q, int trust_construction,
                             uint64_t max_ops, double* value, int* certified);
nnld_status nnld_lower_bound(const nnld_integrand* f, const nnld_pointset* q, int trust_construction,
                             uint64_t max_ops, double* value, int* certified);

nnld_status nnld_bracket_run(const nnld_integrand* f, int b, int m, int trust_construction, uint64_t max_ops,
                             nnld_bracket** out);
int nnld_bracket_has_lower(const nnld_bracket* r);
double nnld_bracket_lower(const nnld_bracket* r);
double nnld_bracket_upper(const nnld_bracket* r);
int64_t nnld_bracket_n(const nnld_bracket* r);
int64_t nnld_bracket_evaluations(const nnld_bracket* r);
/* Multi-line "side=<upper|lower> status=<...> points=<provenance>" summary. */
nnld_status nnld_bracket_describe(const nnld_bracket* r, char** out);
nnld_status nnld_bracket_csv_row(const nnld_bracket* r, int m, char** out);
const char* nnld_bracket_csv_header(void);
void nnld_bracket_free(nnld_bracket* r);

/* Header plus one row per m. */
nnld_status nnld_figure2_csv(int m_lo, int m_hi, int trust_construction, uint64_t max_ops, char** out);

#ifdef __cplusplus
}
#endif

#endif
