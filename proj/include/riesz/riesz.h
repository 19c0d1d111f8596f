/* Generalized Riesz product engine: C interface.
 *
 * Opaque handles own immutable values; every function returns a riesz_status
 * and reports failure details through riesz_last_error() (thread-local).
 * Strings returned through char** are heap-allocated; release them with
 * riesz_string_free. Numeric output arrays are caller-allocated with sizes
 * stated in each contract. Stage indices are 1-based throughout.
 */

#ifndef RIESZ_H
#define RIESZ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RIESZ_VERSION "1.0.0"

typedef enum riesz_status {
  RIESZ_OK = 0,
  RIESZ_ERR_INVALID_ARGUMENT = 1,
  RIESZ_ERR_GRID = 2,
  RIESZ_ERR_NUMERIC = 3,
  RIESZ_ERR_OVERFLOW = 4,
  RIESZ_ERR_INFEASIBLE = 5,
  RIESZ_ERR_INTERNAL = 6
} riesz_status;

typedef struct riesz_poly riesz_poly;
typedef struct riesz_spec riesz_spec;
typedef struct riesz_rankone riesz_rankone;

const char* riesz_version(void);
/* Message for the most recent failure on this thread ("" if none). */
const char* riesz_last_error(void);
void riesz_string_free(char* s);

/* ---------- polynomials ---------- */

riesz_status riesz_poly_from_terms(size_t count, const int64_t* exponents,
                                   const double* re, const double* im, riesz_poly** out);
riesz_status riesz_poly_from_json(const char* json, riesz_poly** out);
riesz_status riesz_poly_to_json(const riesz_poly* p, char** out);
void riesz_poly_free(riesz_poly* p);

riesz_status riesz_poly_degree(const riesz_poly* p, int64_t* out);
riesz_status riesz_poly_term_count(const riesz_poly* p, size_t* out);
/* Arrays of term_count entries. */
riesz_status riesz_poly_terms(const riesz_poly* p, int64_t* exponents, double* re, double* im);

/* Scale to unit coefficient-square sum and rotate the constant term positive.
 * scale/rotation outputs may be NULL. */
riesz_status riesz_poly_normalize(const riesz_poly* p, riesz_poly** out, double* scale,
                                  double* rotation_re, double* rotation_im);
riesz_status riesz_poly_multiply(const riesz_poly* a, const riesz_poly* b, riesz_poly** out);
riesz_status riesz_poly_contract(const riesz_poly* p, int64_t q, riesz_poly** out);

riesz_status riesz_poly_l2_norm(const riesz_poly* p, double* out);
/* grid = 0 picks the default (smallest power of two >= max(4*deg+4, 4096)). */
riesz_status riesz_poly_l1_norm(const riesz_poly* p, size_t grid, double* out);
riesz_status riesz_poly_sup_norm(const riesz_poly* p, size_t grid, double* out);
riesz_status riesz_default_grid(int64_t degree, size_t* out);

/* values_re/values_im: grid entries, values[k] = p(exp(2 pi i k / grid)). */
riesz_status riesz_poly_eval_grid(const riesz_poly* p, size_t grid, double* values_re,
                                  double* values_im);

/* dissociated: 1/0. witness_json (optional): two colliding selections on
 * failure. */
riesz_status riesz_polys_dissociated(const riesz_poly* const* ps, size_t count,
                                     int* dissociated, char** witness_json);

/* ---------- factorization ---------- */

riesz_status riesz_factorization_json(const riesz_poly* p, char** out);
riesz_status riesz_mahler_measure(const riesz_poly* p, double* out);
riesz_status riesz_mahler_jensen(const riesz_poly* p, size_t grid, double* out);
riesz_status riesz_outer_constant_term(const riesz_poly* p, double* out);

/* ---------- product specifications ---------- */

/* Accepts explicit factor lists or generator stanzas ("classical_riesz",
 * "ledrappier", "rankone"). */
riesz_status riesz_spec_from_json(const char* json, riesz_spec** out);
riesz_status riesz_spec_to_json(const riesz_spec* spec, char** out);
void riesz_spec_free(riesz_spec* spec);

riesz_status riesz_spec_stage_count(const riesz_spec* spec, size_t* out);
riesz_status riesz_spec_factor(const riesz_spec* spec, size_t index, riesz_poly** out);
riesz_status riesz_spec_degree(const riesz_spec* spec, size_t n, int64_t* out);

riesz_status riesz_partial_product(const riesz_spec* spec, size_t n, riesz_poly** out);
/* density: grid entries. */
riesz_status riesz_density_grid(const riesz_spec* spec, size_t n, size_t grid, double* density);
/* re/im: kmax+1 entries for j = 0..kmax. Negative kmax is rejected. */
riesz_status riesz_fourier_coefficients(const riesz_spec* spec, size_t n, int64_t kmax,
                                        double* re, double* im);
riesz_status riesz_stage_diagnostics_json(const riesz_spec* spec, size_t n, char** out);
riesz_status riesz_mahler_of_product(const riesz_spec* spec, size_t n, double* out);
riesz_status riesz_mahler_of_product_jensen(const riesz_spec* spec, size_t n, size_t grid,
                                            double* out);
/* indices: 1-based strictly increasing. */
riesz_status riesz_subproduct(const riesz_spec* spec, const size_t* indices, size_t count,
                              riesz_spec** out);
riesz_status riesz_corollary25_json(const riesz_spec* spec, char** out);
riesz_status riesz_contract_product(const riesz_spec* spec, int64_t q, riesz_spec** out);

/* tail_assertion: 0 unknown, 1 convergent, 2 divergent. verdict_json reports
 * the criterion evaluation and partial sums. */
riesz_status riesz_classical_riesz(const double* thetas, const int64_t* exponents, size_t count,
                                   int tail_assertion, riesz_spec** out, char** verdict_json);
riesz_status riesz_ledrappier(const int64_t* heights, const int64_t* spacers, size_t count,
                              riesz_spec** out);
riesz_status riesz_tail_autocorrelation(const riesz_spec* spec, size_t m, int64_t kmax,
                                        double* max_abs, double* bound);

/* ---------- dichotomy ---------- */

/* values: nmax entries. grid = 0 picks the default; *grid_used reports the
 * grid after the coarse/fine refinement step. */
riesz_status riesz_affinity_sequence(const riesz_spec* mu, const riesz_spec* nu, size_t nmax,
                                     size_t grid, double* values, size_t* grid_used,
                                     double* discrepancy);
riesz_status riesz_bourgain_sequence(const riesz_spec* mu, size_t nmax, size_t grid,
                                     double* values, size_t* grid_used, double* discrepancy);
riesz_status riesz_guenais_json(const riesz_spec* mu, size_t nmax, size_t grid, char** out);
/* values: grid entries of |S_n|. */
riesz_status riesz_rn_sqrt_grid(const riesz_spec* mu, size_t n, size_t grid, double* values);
/* phase grid: arrays of grid entries; defined[k] is 1 where |S_n| exceeds the
 * floor (pass floor <= 0 for the default 1e-12). */
riesz_status riesz_phase_grid(const riesz_spec* mu, size_t n, size_t grid, double floor,
                              double* re, double* im, uint8_t* defined,
                              size_t* undefined_count);
riesz_status riesz_phase_fourier_coefficient(const riesz_spec* mu, size_t n, size_t grid,
                                             double floor, int64_t k, double* re, double* im);
riesz_status riesz_support_bound_json(const riesz_spec* mu, size_t budget, uint64_t seed,
                                      char** out);
/* g: grid entries (nonnegative). out json: per-factor statistic pairs. */
riesz_status riesz_theorem615_json(const riesz_spec* mu, const double* g, size_t grid,
                                   size_t nmax, char** out);
/* nu may be NULL (Lebesgue). budget = 0 defaults to the stage count. */
riesz_status riesz_dichotomy_report_json(const riesz_spec* mu, const riesz_spec* nu,
                                         size_t nmax, size_t grid, size_t budget,
                                         uint64_t seed, char** out);

/* ---------- rank-one constructions ---------- */

riesz_status riesz_rankone_from_json(const char* json, riesz_rankone** out);
riesz_status riesz_rankone_to_json(const riesz_rankone* params, char** out);
void riesz_rankone_free(riesz_rankone* params);

riesz_status riesz_rankone_stage_count(const riesz_rankone* params, size_t* out);
/* Heights h_0..h_K and return times per stage. */
riesz_status riesz_return_times_json(const riesz_rankone* params, char** out);
riesz_status riesz_rankone_build(const riesz_rankone* params, size_t k, riesz_spec** out);
riesz_status riesz_dissipativity_product(const riesz_rankone* params, size_t k, double* out);

/* dynamical/purely: 1/0; violation_json carries the first failed condition. */
riesz_status riesz_dynamical_origin(const riesz_spec* spec, int* dynamical, int* purely,
                                    char** violation);
/* Round-trip reconstruction of (m_k, spacers, probabilities). */
riesz_status riesz_reconstruct_params_json(const riesz_spec* spec, char** out);

/* lift_exponents: count entries (the N_j). multiplier >= 2. */
riesz_status riesz_dissociate_lift(const riesz_poly* const* ps, size_t count,
                                   int64_t multiplier, riesz_spec** out,
                                   int64_t* lift_exponents);
/* selected/fractions: stage_count entries. */
riesz_status riesz_flat_lift(const riesz_poly* const* ps, size_t count, size_t stage_count,
                             int64_t multiplier, riesz_spec** out, size_t* selected,
                             double* fractions, int64_t* lift_exponents);

/* ---------- flatness and zeros ---------- */

/* lambda < 0 skips the A_lambda class test. */
riesz_status riesz_flatness_metrics_json(const riesz_poly* p, size_t grid, double lambda,
                                         char** out);
riesz_status riesz_barker_catalog_json(char** out);
riesz_status riesz_verify_barker(const int* signs, size_t count, double* max_correlation,
                                 int* is_barker);
/* trial_l1: trials entries; summary_json may be NULL. threads = 0 means 1. */
riesz_status riesz_gaussian_experiment(int64_t m, size_t trials, uint64_t seed, size_t grid,
                                       unsigned threads, double* trial_l1,
                                       char** summary_json);
riesz_status riesz_bisect_bm(int64_t m, double* out);
riesz_status riesz_zero_annulus_json(const riesz_poly* p, int64_t h, char** out);
riesz_status riesz_zero_one_annulus_json(const riesz_poly* p, char** out);
/* delta <= 0 uses the regime default 33*pi*log(n)/sqrt(n) (which must be < 1). */
riesz_status riesz_cluster_count_json(const riesz_poly* p, double point_re, double point_im,
                                      double delta, char** out);

#ifdef __cplusplus
}
#endif

#endif /* RIESZ_H */
