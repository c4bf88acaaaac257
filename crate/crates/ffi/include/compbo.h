/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef COMPBO_H
#define COMPBO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CompboStatus {
  COMPBO_STATUS_OK = 0,
  COMPBO_STATUS_NULL_POINTER = 1,
  COMPBO_STATUS_INVALID_ARGUMENT = 2,
  COMPBO_STATUS_DIMENSION_MISMATCH = 3,
  COMPBO_STATUS_DEGENERATE_KERNEL = 4,
  COMPBO_STATUS_UNKNOWN_TASK = 5,
  COMPBO_STATUS_UNKNOWN_STRATEGY = 6,
  COMPBO_STATUS_G_STAR_TOO_LOW = 7,
  COMPBO_STATUS_RUN_FAILED = 8,
  COMPBO_STATUS_IO = 9,
  COMPBO_STATUS_PANIC = 10,
} CompboStatus;

// A fitted Gaussian process.
typedef struct CompboGp CompboGp;

// A composite objective: a built-in task or one made of callbacks.
typedef struct CompboObjective CompboObjective;

// The records of one finished optimization run.
typedef struct CompboRun CompboRun;

// `h` over `m` constituent values.
typedef double (*CompboCompositionFn)(const double *values, size_t m, void *user_data);

// Constituent `i` at the point `x` of dimension `d`.
typedef double (*CompboConstituentFn)(const double *x, size_t d, size_t i, void *user_data);

// `h(x, values)` with `m` constituent values.
typedef double (*CompboOuterFn)(const double *x,
                                size_t d,
                                const double *values,
                                size_t m,
                                void *user_data);

typedef struct CompboRunOptions {
  // NUL-terminated: "vanilla-ei", "vanilla-ucb", "c-ei" or "c-ucb".
  const char *strategy;
  size_t iterations;
  size_t init_points;
  size_t mc_samples;
  double beta0;
  double beta_decay;
  uint64_t seed;
  // Non-zero selects the literal `h(mean + beta * sd)` bound for c-ucb.
  int32_t literal_cucb;
} CompboRunOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until the
// next `compbo_*` call on the same thread.
const char *compbo_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *compbo_version(void);

// Fits a GP to `n` points of dimension `d`. `lower`/`upper` give the domain
// used to scale inputs and may both be NULL.
//
// # Safety
// `points` must hold `n * d` doubles, `targets` `n`, and `lower`/`upper`
// `d` each when non-NULL. `out` must be a valid pointer.
enum CompboStatus compbo_gp_fit(const double *points,
                                size_t n,
                                size_t d,
                                const double *targets,
                                double noise_stddev,
                                const double *lower,
                                const double *upper,
                                struct CompboGp **out);

// Posterior mean and latent variance at `x`.
//
// # Safety
// `gp` must come from [`compbo_gp_fit`]; `x` must hold `d` doubles.
enum CompboStatus compbo_gp_posterior(const struct CompboGp *gp,
                                      const double *x,
                                      size_t d,
                                      double *mean,
                                      double *variance);

// # Safety
// `gp` must come from [`compbo_gp_fit`].
enum CompboStatus compbo_gp_log_marginal_likelihood(const struct CompboGp *gp, double *out);

// Fitted hyperparameters; the lengthscale is in scaled-input units when a
// domain was given.
//
// # Safety
// `gp` must come from [`compbo_gp_fit`].
enum CompboStatus compbo_gp_hyperparams(const struct CompboGp *gp,
                                        double *signal_variance,
                                        double *lengthscale,
                                        double *noise_stddev);

// # Safety
// `gp` must come from [`compbo_gp_fit`] and not be used afterwards. NULL is ignored.
void compbo_gp_free(struct CompboGp *gp);

// Closed-form expected improvement over `best`.
double compbo_vanilla_ei(double mean, double variance, double best);

// `mean + beta * sqrt(variance)`.
double compbo_vanilla_ucb(double mean, double variance, double beta);

// Monte Carlo composite EI with `num_samples` draws from `seed`.
//
// # Safety
// `means` and `variances` must hold `m` doubles; `h` must be a valid function.
enum CompboStatus compbo_c_ei(const double *means,
                              const double *variances,
                              size_t m,
                              CompboCompositionFn h,
                              void *user_data,
                              double best,
                              size_t num_samples,
                              uint64_t seed,
                              double *out);

// Composite UCB. `optimistic` non-zero selects the per-constituent signed
// bound; zero gives `h(mean + beta * sd)`.
//
// # Safety
// As for [`compbo_c_ei`].
enum CompboStatus compbo_c_ucb(const double *means,
                               const double *variances,
                               size_t m,
                               CompboCompositionFn h,
                               void *user_data,
                               double beta,
                               int32_t optimistic,
                               double *out);

// Opens a registered benchmark task by name.
//
// # Safety
// `name` must be a NUL-terminated string; `out` a valid pointer.
enum CompboStatus compbo_task_open(const char *name, struct CompboObjective **out);

// Builds an objective from callbacks. `g_star` may be NaN when unknown.
//
// # Safety
// `lower`/`upper` must hold `d` doubles, `name` be NUL-terminated, the
// callbacks valid for the handle's lifetime, and `user_data` remain valid
// until [`compbo_objective_free`].
enum CompboStatus compbo_objective_new(const char *name,
                                       size_t d,
                                       const double *lower,
                                       const double *upper,
                                       size_t m,
                                       CompboConstituentFn constituent,
                                       CompboOuterFn outer,
                                       void *user_data,
                                       double g_star,
                                       struct CompboObjective **out);

// Input dimension, or 0 for NULL.
//
// # Safety
// `obj` must be NULL or a live objective handle.
size_t compbo_objective_dim(const struct CompboObjective *obj);

// Number of constituents, or 0 for NULL.
//
// # Safety
// `obj` must be NULL or a live objective handle.
size_t compbo_objective_arity(const struct CompboObjective *obj);

// Stored reference maximum, or NaN for NULL.
//
// # Safety
// `obj` must be NULL or a live objective handle.
double compbo_objective_g_star(const struct CompboObjective *obj);

// Copies the domain bounds into `lower` and `upper` (each of length `d`).
//
// # Safety
// `obj` must be a live handle; `lower`/`upper` must have room for `d` doubles.
enum CompboStatus compbo_objective_bounds(const struct CompboObjective *obj,
                                          double *lower,
                                          double *upper,
                                          size_t d);

// Evaluates every constituent and `g` at `x`. `members` may be NULL;
// otherwise it receives `m` values.
//
// # Safety
// `obj` must be a live handle; `x` must hold `d` doubles; `members`, when
// not NULL, room for `m`.
enum CompboStatus compbo_objective_evaluate(const struct CompboObjective *obj,
                                            const double *x,
                                            size_t d,
                                            double *members,
                                            size_t m,
                                            double *g);

// # Safety
// `obj` must come from this library and not be used afterwards. NULL is ignored.
void compbo_objective_free(struct CompboObjective *obj);

// Defaults: c-ucb, 70 iterations, 10 initial points, 128 MC draws,
// beta 1 decaying by 0.99, seed 0.
struct CompboRunOptions compbo_run_options_default(void);

// Runs the full optimization loop on `obj`.
//
// # Safety
// `obj` must be a live handle; `options` must point to a valid struct whose
// `strategy` is NUL-terminated; `out` must be a valid pointer.
enum CompboStatus compbo_run_bo(const struct CompboObjective *obj,
                                const struct CompboRunOptions *options,
                                struct CompboRun **out);

// Number of records (initial design plus iterations), or 0 for NULL.
//
// # Safety
// `run` must be NULL or a live run handle.
size_t compbo_run_len(const struct CompboRun *run);

// Number of leading records from the initial design, or 0 for NULL.
//
// # Safety
// `run` must be NULL or a live run handle.
size_t compbo_run_init_points(const struct CompboRun *run);

// Best observed `g`, or NaN for NULL.
//
// # Safety
// `run` must be NULL or a live run handle.
double compbo_run_best_g(const struct CompboRun *run);

// Wall-clock seconds spent in the acquisition loop, or NaN for NULL.
//
// # Safety
// `run` must be NULL or a live run handle.
double compbo_run_loop_seconds(const struct CompboRun *run);

// Copies record `index`. `x` needs room for `d` values and `members` for
// `m`; either may be NULL to skip it.
//
// # Safety
// `run` must be a live handle and the buffers sized as stated.
enum CompboStatus compbo_run_record(const struct CompboRun *run,
                                    size_t index,
                                    double *x,
                                    size_t d,
                                    double *members,
                                    size_t m,
                                    double *g);

// Running minimum regret against `g_star` for each acquisition iteration;
// `out` needs room for `len = compbo_run_len - compbo_run_init_points`.
//
// # Safety
// `run` must be a live handle and `out` hold `len` doubles.
enum CompboStatus compbo_run_min_regret(const struct CompboRun *run,
                                        double g_star,
                                        double *out,
                                        size_t len);

// # Safety
// `run` must come from [`compbo_run_bo`] and not be used afterwards. NULL is ignored.
void compbo_run_free(struct CompboRun *run);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMPBO_H */
