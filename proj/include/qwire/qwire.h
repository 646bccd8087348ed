/* qwire: spin-chain state-transfer robustness benchmark, C API.
 *
 * All handles are opaque; every fallible call returns a qwire_status and
 * reports results through out-parameters. qwire_last_error() holds a
 * thread-local message for the most recent failure on the calling thread.
 *
 * Units: couplings and on-site energies are dimensionless (in units of J0),
 * times in 1/J0. Sites are 0-based.
 */

#ifndef QWIRE_H
#define QWIRE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QWIRE_API __declspec(dllexport)
#else
#define QWIRE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qwire_status {
  QWIRE_OK = 0,
  QWIRE_ERR_INVALID_ARGUMENT = 1,
  QWIRE_ERR_NUMERICAL = 2,
  QWIRE_ERR_IO = 3,
  QWIRE_ERR_INTERNAL = 4
} qwire_status;

typedef enum qwire_protocol {
  QWIRE_PROTOCOL_SPIN_ANALOGUE = 0,
  QWIRE_PROTOCOL_OPTIMAL_COUPLING = 1
} qwire_protocol;

typedef enum qwire_alpha_mode {
  QWIRE_ALPHA_OPTIMIZED = 0,
  QWIRE_ALPHA_HEURISTIC = 1,
  QWIRE_ALPHA_EXPLICIT = 2
} qwire_alpha_mode;

typedef enum qwire_b_variant {
  QWIRE_B_CALCULUS = 0,  /* true minimizer of the single-state fidelity */
  QWIRE_B_PAPER_EQ15 = 1 /* expression as printed in the source study */
} qwire_b_variant;

QWIRE_API const char* qwire_version(void);
QWIRE_API const char* qwire_last_error(void);

/* ---- chains ---------------------------------------------------------- */

typedef struct qwire_chain qwire_chain;

QWIRE_API qwire_status qwire_chain_create_spin_analogue(size_t n_sites, double epsilon,
                                                        qwire_chain** out);
QWIRE_API qwire_status qwire_chain_create_optimal_coupling(size_t n_sites, double epsilon,
                                                           double alpha, qwire_chain** out);
QWIRE_API void qwire_chain_destroy(qwire_chain* chain);

QWIRE_API size_t qwire_chain_n_sites(const qwire_chain* chain);
QWIRE_API double qwire_chain_alpha(const qwire_chain* chain);
QWIRE_API double qwire_chain_transfer_time(const qwire_chain* chain);
/* buf must hold n_sites-1 (couplings) / n_sites (onsite) doubles. */
QWIRE_API qwire_status qwire_chain_couplings(const qwire_chain* chain, double* buf, size_t len);
QWIRE_API qwire_status qwire_chain_onsite(const qwire_chain* chain, double* buf, size_t len);

typedef struct qwire_ideal_report {
  double p_ideal;
  double phi_ideal;
  double tau;
} qwire_ideal_report;

QWIRE_API qwire_status qwire_chain_ideal_reference(const qwire_chain* chain,
                                                   qwire_ideal_report* out);

QWIRE_API double qwire_heuristic_alpha(size_t n_sites);
QWIRE_API qwire_status qwire_optimize_alpha(size_t n_sites, double epsilon,
                                            double* alpha_out, double* p_ideal_out);

/* ---- scalar measures -------------------------------------------------- */

QWIRE_API qwire_status qwire_fidelity_psi(double beta_sq, double p, double delta_phi,
                                          double* out);
QWIRE_API qwire_status qwire_avg_fidelity(double p, double delta_phi, double* out);
QWIRE_API qwire_status qwire_min_fidelity(double p, double delta_phi, qwire_b_variant variant,
                                          double* f_min, double* b_worst);
QWIRE_API double qwire_concurrence(double re, double im);
QWIRE_API double qwire_classical_fidelity(void); /* 2/3 */

/* ---- Monte Carlo sweeps ------------------------------------------------ */

typedef struct qwire_experiment qwire_experiment;

QWIRE_API qwire_experiment* qwire_experiment_create(void);
QWIRE_API void qwire_experiment_destroy(qwire_experiment* exp);

QWIRE_API qwire_status qwire_experiment_set_protocol(qwire_experiment* exp, qwire_protocol p);
QWIRE_API qwire_status qwire_experiment_set_sites(qwire_experiment* exp, const size_t* n_list,
                                                  size_t count);
QWIRE_API qwire_status qwire_experiment_set_sigma_coupling_grid(qwire_experiment* exp,
                                                                const double* grid, size_t count);
QWIRE_API qwire_status qwire_experiment_set_sigma_onsite_grid(qwire_experiment* exp,
                                                              const double* grid, size_t count);
QWIRE_API qwire_status qwire_experiment_set_beta_grid(qwire_experiment* exp, const double* grid,
                                                      size_t count);
QWIRE_API qwire_status qwire_experiment_set_realizations(qwire_experiment* exp, size_t r);
QWIRE_API qwire_status qwire_experiment_set_seed(qwire_experiment* exp, uint64_t seed);
QWIRE_API qwire_status qwire_experiment_set_epsilon(qwire_experiment* exp, double epsilon);
QWIRE_API qwire_status qwire_experiment_set_alpha(qwire_experiment* exp, qwire_alpha_mode mode,
                                                  double explicit_value);
QWIRE_API qwire_status qwire_experiment_set_b_variant(qwire_experiment* exp, qwire_b_variant v);
QWIRE_API qwire_status qwire_experiment_set_threads(qwire_experiment* exp, size_t threads);

typedef struct qwire_sweep_result qwire_sweep_result;

QWIRE_API qwire_status qwire_sweep_run(const qwire_experiment* exp, qwire_sweep_result** out);
QWIRE_API void qwire_sweep_result_destroy(qwire_sweep_result* result);

QWIRE_API size_t qwire_sweep_result_rows(const qwire_sweep_result* result);
QWIRE_API size_t qwire_sweep_result_beta_count(const qwire_sweep_result* result);
QWIRE_API qwire_status qwire_sweep_result_beta_grid(const qwire_sweep_result* result,
                                                    double* buf, size_t len);

typedef struct qwire_cell_stats {
  size_t n_sites;
  double sigma_coupling; /* sigma_J */
  double sigma_onsite;   /* sigma_eps */
  size_t realizations;
  double alpha;
  double tau;
  double p_ideal;
  double mean_favg, var_favg;
  double mean_fmin, var_fmin;
  double mean_conc, var_conc;
  double mean_b, var_b;
  double mean_p, var_p;
  double pr_favg_gt_cl;
  double pr_fmin_gt_cl;
  double gap; /* pr_fmin_gt_cl - pr_favg_gt_cl */
} qwire_cell_stats;

QWIRE_API qwire_status qwire_sweep_result_cell(const qwire_sweep_result* result, size_t row,
                                               qwire_cell_stats* out);
/* mean_buf/var_buf must hold beta_count doubles; either may be NULL. */
QWIRE_API qwire_status qwire_sweep_result_fpsi(const qwire_sweep_result* result, size_t row,
                                               double* mean_buf, double* var_buf, size_t len);

/* ---- scaling-law fits --------------------------------------------------- */

typedef struct qwire_fit_point {
  double n_sites;
  double sigma_onsite;
  double sigma_coupling;
  double value;
} qwire_fit_point;

typedef struct qwire_fit_options {
  double amplitude, offset, decay_offdiag, decay_diag; /* initial values  */
  int fix_amplitude, fix_offset, fix_decay_offdiag, fix_decay_diag;
} qwire_fit_options;

typedef struct qwire_fit_report {
  double amplitude, offset, decay_offdiag, decay_diag;
  double rms_residual;
  int iterations;
  int converged;
  double covariance_diag[4];
} qwire_fit_report;

QWIRE_API qwire_status qwire_fit_scaling_law(const qwire_fit_point* points, size_t count,
                                             const qwire_fit_options* options,
                                             qwire_fit_report* out);
QWIRE_API double qwire_scaling_model_eval(double amplitude, double offset, double decay_offdiag,
                                          double decay_diag, double n, double sigma_onsite,
                                          double sigma_coupling);
/* A and C held at the study's closed forms, given the ideal p and <B>. */
QWIRE_API qwire_status qwire_held_amplitude(qwire_protocol protocol, int min_fidelity_target,
                                            double p_ideal, double mean_b, double* amplitude,
                                            double* offset);
QWIRE_API qwire_status qwire_reference_decay(qwire_protocol protocol, int min_fidelity_target,
                                             double* decay_offdiag, double* decay_diag);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QWIRE_H */
