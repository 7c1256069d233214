/* C interface for the gwgames shared library.
 *
 * Computes exact first-player outcome probabilities (loss / win / draw) of
 * k-jump normal and misere games on Galton-Watson trees, the Poisson draw
 * phase transition constants, and Monte Carlo cross-checks.
 *
 * All functions that can fail return a gw_status; out-parameters are only
 * written on GW_OK. gw_last_error() returns a thread-local message for the
 * most recent failure on the calling thread. Handles are opaque; every
 * *_new/*_free pair owns its allocation. Handles are immutable after
 * creation and safe to share across threads.
 */
#ifndef GWGAMES_H
#define GWGAMES_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GW_OK = 0,
  GW_ERR_INVALID = 1,        /* bad argument or configuration */
  GW_ERR_DOMAIN = 2,         /* numeric input outside its domain */
  GW_ERR_BRACKET = 3,        /* root bracket sign check failed */
  GW_ERR_NO_CONVERGENCE = 4, /* fixed-point iteration stalled */
  GW_ERR_HORIZON = 5,        /* horizon incompatible with tree truncation */
  GW_ERR_INTERNAL = 6
} gw_status;

typedef enum { GW_NORMAL = 0, GW_MISERE = 1 } gw_variant;

typedef struct gw_dist gw_dist;
typedef struct gw_ladder gw_ladder;

const char* gw_status_str(gw_status s);
const char* gw_last_error(void);

/* ---- offspring distributions ---- */

gw_status gw_dist_poisson(double rate, gw_dist** out);
gw_status gw_dist_finite(const double* mass, size_t len, gw_dist** out);
void gw_dist_free(gw_dist* d);

double gw_dist_chi0(const gw_dist* d);
gw_status gw_pgf(const gw_dist* d, double x, double* out);
gw_status gw_pgf_deriv(const gw_dist* d, double x, int order, double* out);

/* ---- ladder F_0..F_k, c_0..c_k ---- */

gw_status gw_ladder_new(const gw_dist* d, int k, double tol, gw_ladder** out);
void gw_ladder_free(gw_ladder* l);

int gw_ladder_k(const gw_ladder* l);
gw_status gw_ladder_c(const gw_ladder* l, int i, double* out);
gw_status gw_ladder_f(const gw_ladder* l, int i, double x, double* out);
gw_status gw_ladder_f_deriv(const gw_ladder* l, int i, double x, double* out);

/* ---- outcome maps and class probabilities ---- */

gw_status gw_h(const gw_ladder* l, double x, double* out);
gw_status gw_j(const gw_ladder* l, double x, double* out);

/* Writes the k(k+1)/2 class probabilities p_{i,j}, 0 <= i < j <= k, into
 * probs (and the index pairs into pair_i/pair_j when non-NULL). cap is the
 * capacity of the buffers; *count receives the number of entries. */
gw_status gw_class_probs(const gw_ladder* l, double x, double* probs,
                         int* pair_i, int* pair_j, size_t cap, size_t* count);

/* Residuals of the four k=2 fixed-point equations. */
gw_status gw_system_residual_k2(const gw_ladder* l, double nl2, double p01,
                                double p02, double p12, double out[4]);

/* ---- solvers ---- */

typedef struct {
  double loss;
  double win;
  double draw;
} gw_outcome_triple;

typedef struct {
  double c_k;
  double chat_k;
  double slope_at_ck;
  double eta; /* rate * c_2 when Poisson and k == 2, else 0 */
  int draw_positive;
} gw_phase_info;

gw_status gw_solve_nl(const gw_ladder* l, double tol, long max_iter,
                      double* out);
gw_status gw_solve_ml(const gw_ladder* l, double tol, long max_iter,
                      double* out);
gw_status gw_solve_chat(const gw_ladder* l, double tol, double* out);

/* info may be NULL when only the triple is wanted. */
gw_status gw_solve_outcomes(const gw_ladder* l, gw_variant v, double tol,
                            long max_iter, gw_outcome_triple* out,
                            gw_phase_info* info);

gw_status gw_h_slope_at_ck(const gw_ladder* l, double* out);
gw_status gw_h_slope_at_ck_fd(const gw_ladder* l, double* out);

gw_status gw_lambda_c(double tol, double* out);
gw_status gw_eta_extremum(double* lambda0, double* eta_max);

typedef struct {
  int nl_equals_ck;
  double slope_h;
  double abs_slope_f;
  int finite_expected_duration_certified;
  int conjecture_holds;
} gw_duration_report;

gw_status gw_duration_check(const gw_ladder* l, double tol, long max_iter,
                            gw_duration_report* out);

/* Analytic finite-horizon values loss^(n), win^(n). */
gw_status gw_analytic_horizon(const gw_ladder* l, gw_variant v, int n,
                              double* loss, double* win);

/* ---- Monte Carlo ---- */

typedef struct {
  double loss;
  double win;
  double se_loss;
  double se_win;
} gw_mc_row;

/* rows must hold `horizon` entries; rows[n-1] is horizon n. excluded (may be
 * NULL) receives the number of trees dropped at the node cap. */
gw_status gw_mc_estimate(const gw_dist* d, int k, gw_variant v, int horizon,
                         long samples, unsigned long long seed, long node_cap,
                         gw_mc_row* rows, long* excluded);

gw_status gw_mc_duration(const gw_dist* d, int k, gw_variant v, int horizon,
                         long samples, unsigned long long seed, long node_cap,
                         double* duration_partial_sum,
                         double* undecided_fraction, long* excluded);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GWGAMES_H */
