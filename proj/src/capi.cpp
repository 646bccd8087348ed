#include "qwire/qwire.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "qwire/chain.hpp"
#include "qwire/ensemble.hpp"
#include "qwire/errors.hpp"
#include "qwire/fitting.hpp"
#include "qwire/measures.hpp"
#include "qwire/version.hpp"

namespace {

thread_local std::string g_last_error;

qwire_status fail(qwire_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
qwire_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(QWIRE_ERR_INVALID_ARGUMENT, e.what());
  } catch (const qwire::NumericalError& e) {
    return fail(QWIRE_ERR_NUMERICAL, e.what());
  } catch (const std::bad_alloc& e) {
    return fail(QWIRE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QWIRE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QWIRE_ERR_INTERNAL, "unknown error");
  }
}

qwire::Protocol to_protocol(qwire_protocol p) {
  return p == QWIRE_PROTOCOL_SPIN_ANALOGUE ? qwire::Protocol::kSpinAnalogue
                                           : qwire::Protocol::kOptimalCoupling;
}

qwire::BVariant to_variant(qwire_b_variant v) {
  return v == QWIRE_B_CALCULUS ? qwire::BVariant::kCalculus
                               : qwire::BVariant::kPaperEq15;
}

}  // namespace

struct qwire_chain {
  qwire::ChainSpec spec;
};

struct qwire_experiment {
  qwire::SweepConfig config;
};

struct qwire_sweep_result {
  qwire::SweepResult result;
};

extern "C" {

const char* qwire_version(void) { return qwire::kVersion; }

const char* qwire_last_error(void) { return g_last_error.c_str(); }

qwire_status qwire_chain_create_spin_analogue(size_t n_sites, double epsilon,
                                              qwire_chain** out) {
  if (!out) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new qwire_chain{qwire::build_spin_analogue(n_sites, epsilon)};
    return QWIRE_OK;
  });
}

qwire_status qwire_chain_create_optimal_coupling(size_t n_sites, double epsilon,
                                                 double alpha, qwire_chain** out) {
  if (!out) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new qwire_chain{qwire::build_optimal_coupling(n_sites, epsilon, alpha)};
    return QWIRE_OK;
  });
}

void qwire_chain_destroy(qwire_chain* chain) { delete chain; }

size_t qwire_chain_n_sites(const qwire_chain* chain) {
  return chain ? chain->spec.n_sites : 0;
}

double qwire_chain_alpha(const qwire_chain* chain) {
  return chain ? chain->spec.alpha : 0.0;
}

double qwire_chain_transfer_time(const qwire_chain* chain) {
  return chain ? qwire::transfer_time(chain->spec) : 0.0;
}

qwire_status qwire_chain_couplings(const qwire_chain* chain, double* buf, size_t len) {
  if (!chain || !buf) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null argument");
  if (len < chain->spec.couplings.size())
    return fail(QWIRE_ERR_INVALID_ARGUMENT, "buffer too small for couplings");
  std::memcpy(buf, chain->spec.couplings.data(),
              chain->spec.couplings.size() * sizeof(double));
  return QWIRE_OK;
}

qwire_status qwire_chain_onsite(const qwire_chain* chain, double* buf, size_t len) {
  if (!chain || !buf) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null argument");
  if (len < chain->spec.onsite.size())
    return fail(QWIRE_ERR_INVALID_ARGUMENT, "buffer too small for onsite energies");
  std::memcpy(buf, chain->spec.onsite.data(), chain->spec.onsite.size() * sizeof(double));
  return QWIRE_OK;
}

qwire_status qwire_chain_ideal_reference(const qwire_chain* chain, qwire_ideal_report* out) {
  if (!chain || !out) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const qwire::TransferOutcome ref = qwire::ideal_reference(chain->spec);
    out->p_ideal = ref.p;
    out->phi_ideal = ref.phi;
    out->tau = ref.tau;
    return QWIRE_OK;
  });
}

double qwire_heuristic_alpha(size_t n_sites) {
  return n_sites >= 3 ? qwire::heuristic_alpha(n_sites) : 0.0;
}

qwire_status qwire_optimize_alpha(size_t n_sites, double epsilon, double* alpha_out,
                                  double* p_ideal_out) {
  if (!alpha_out) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    const qwire::AlphaSearch s = qwire::optimize_alpha_detailed(n_sites, epsilon);
    *alpha_out = s.alpha;
    if (p_ideal_out) *p_ideal_out = s.p_ideal;
    return QWIRE_OK;
  });
}

qwire_status qwire_fidelity_psi(double beta_sq, double p, double delta_phi, double* out) {
  if (!out) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = qwire::fidelity_psi(beta_sq, p, delta_phi);
    return QWIRE_OK;
  });
}

qwire_status qwire_avg_fidelity(double p, double delta_phi, double* out) {
  if (!out) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = qwire::avg_fidelity(p, delta_phi);
    return QWIRE_OK;
  });
}

qwire_status qwire_min_fidelity(double p, double delta_phi, qwire_b_variant variant,
                                double* f_min, double* b_worst) {
  if (!f_min) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    const qwire::MinFidelity m = qwire::min_fidelity(p, delta_phi, to_variant(variant));
    *f_min = m.f_min;
    if (b_worst) *b_worst = m.b_worst;
    return QWIRE_OK;
  });
}

double qwire_concurrence(double re, double im) {
  return std::abs(qwire::Complex(re, im));
}

double qwire_classical_fidelity(void) { return qwire::kClassicalFidelity; }

qwire_experiment* qwire_experiment_create(void) {
  auto* exp = new (std::nothrow) qwire_experiment;
  if (exp) {
    exp->config.n_list = {15, 25, 50};
    exp->config.sigma_coupling_grid = {0.0};
    exp->config.sigma_onsite_grid = {0.0};
  }
  return exp;
}

void qwire_experiment_destroy(qwire_experiment* exp) { delete exp; }

#define QWIRE_REQUIRE_EXP() \
  if (!exp) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null experiment handle")

qwire_status qwire_experiment_set_protocol(qwire_experiment* exp, qwire_protocol p) {
  QWIRE_REQUIRE_EXP();
  exp->config.protocol = to_protocol(p);
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_sites(qwire_experiment* exp, const size_t* n_list,
                                        size_t count) {
  QWIRE_REQUIRE_EXP();
  if (!n_list || count == 0) return fail(QWIRE_ERR_INVALID_ARGUMENT, "empty site list");
  exp->config.n_list.assign(n_list, n_list + count);
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_sigma_coupling_grid(qwire_experiment* exp,
                                                      const double* grid, size_t count) {
  QWIRE_REQUIRE_EXP();
  if (!grid || count == 0) return fail(QWIRE_ERR_INVALID_ARGUMENT, "empty sigma_J grid");
  exp->config.sigma_coupling_grid.assign(grid, grid + count);
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_sigma_onsite_grid(qwire_experiment* exp, const double* grid,
                                                    size_t count) {
  QWIRE_REQUIRE_EXP();
  if (!grid || count == 0) return fail(QWIRE_ERR_INVALID_ARGUMENT, "empty sigma_eps grid");
  exp->config.sigma_onsite_grid.assign(grid, grid + count);
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_beta_grid(qwire_experiment* exp, const double* grid,
                                            size_t count) {
  QWIRE_REQUIRE_EXP();
  if (!grid || count == 0) return fail(QWIRE_ERR_INVALID_ARGUMENT, "empty beta grid");
  exp->config.ensemble.beta_grid.assign(grid, grid + count);
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_realizations(qwire_experiment* exp, size_t r) {
  QWIRE_REQUIRE_EXP();
  if (r == 0) return fail(QWIRE_ERR_INVALID_ARGUMENT, "realizations must be >= 1");
  exp->config.ensemble.realizations = r;
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_seed(qwire_experiment* exp, uint64_t seed) {
  QWIRE_REQUIRE_EXP();
  exp->config.master_seed = seed;
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_epsilon(qwire_experiment* exp, double epsilon) {
  QWIRE_REQUIRE_EXP();
  exp->config.epsilon = epsilon;
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_alpha(qwire_experiment* exp, qwire_alpha_mode mode,
                                        double explicit_value) {
  QWIRE_REQUIRE_EXP();
  switch (mode) {
    case QWIRE_ALPHA_OPTIMIZED:
      exp->config.alpha_mode = qwire::AlphaMode::kOptimized;
      break;
    case QWIRE_ALPHA_HEURISTIC:
      exp->config.alpha_mode = qwire::AlphaMode::kHeuristic;
      break;
    case QWIRE_ALPHA_EXPLICIT:
      if (!(explicit_value > 0.0) || explicit_value > 1.0)
        return fail(QWIRE_ERR_INVALID_ARGUMENT, "alpha must lie in (0, 1]");
      exp->config.alpha_mode = qwire::AlphaMode::kExplicit;
      exp->config.alpha_value = explicit_value;
      break;
    default:
      return fail(QWIRE_ERR_INVALID_ARGUMENT, "unknown alpha mode");
  }
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_b_variant(qwire_experiment* exp, qwire_b_variant v) {
  QWIRE_REQUIRE_EXP();
  exp->config.ensemble.b_variant = to_variant(v);
  return QWIRE_OK;
}

qwire_status qwire_experiment_set_threads(qwire_experiment* exp, size_t threads) {
  QWIRE_REQUIRE_EXP();
  exp->config.ensemble.threads = threads;
  return QWIRE_OK;
}

qwire_status qwire_sweep_run(const qwire_experiment* exp, qwire_sweep_result** out) {
  if (!exp || !out) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto result = qwire::run_sweep(exp->config);
    *out = new qwire_sweep_result{std::move(result)};
    return QWIRE_OK;
  });
}

void qwire_sweep_result_destroy(qwire_sweep_result* result) { delete result; }

size_t qwire_sweep_result_rows(const qwire_sweep_result* result) {
  return result ? result->result.cells.size() : 0;
}

size_t qwire_sweep_result_beta_count(const qwire_sweep_result* result) {
  return result ? result->result.config.ensemble.beta_grid.size() : 0;
}

qwire_status qwire_sweep_result_beta_grid(const qwire_sweep_result* result, double* buf,
                                          size_t len) {
  if (!result || !buf) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null argument");
  const auto& grid = result->result.config.ensemble.beta_grid;
  if (len < grid.size()) return fail(QWIRE_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(buf, grid.data(), grid.size() * sizeof(double));
  return QWIRE_OK;
}

qwire_status qwire_sweep_result_cell(const qwire_sweep_result* result, size_t row,
                                     qwire_cell_stats* out) {
  if (!result || !out) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null argument");
  if (row >= result->result.cells.size())
    return fail(QWIRE_ERR_INVALID_ARGUMENT, "row index out of range");
  const qwire::SweepCell& cell = result->result.cells[row];
  out->n_sites = cell.n_sites;
  out->sigma_coupling = cell.sigma_coupling;
  out->sigma_onsite = cell.sigma_onsite;
  out->realizations = cell.stats.n_realizations;
  out->alpha = cell.alpha;
  out->tau = cell.tau;
  out->p_ideal = cell.p_ideal;
  out->mean_favg = cell.stats.mean_f_avg;
  out->var_favg = cell.stats.var_f_avg;
  out->mean_fmin = cell.stats.mean_f_min;
  out->var_fmin = cell.stats.var_f_min;
  out->mean_conc = cell.stats.mean_concurrence;
  out->var_conc = cell.stats.var_concurrence;
  out->mean_b = cell.stats.mean_b_worst;
  out->var_b = cell.stats.var_b_worst;
  out->mean_p = cell.stats.mean_p;
  out->var_p = cell.stats.var_p;
  out->pr_favg_gt_cl = cell.stats.pr_favg_above_cl;
  out->pr_fmin_gt_cl = cell.stats.pr_fmin_above_cl;
  out->gap = qwire::success_probability_gap(cell.stats);
  return QWIRE_OK;
}

qwire_status qwire_sweep_result_fpsi(const qwire_sweep_result* result, size_t row,
                                     double* mean_buf, double* var_buf, size_t len) {
  if (!result) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null argument");
  if (row >= result->result.cells.size())
    return fail(QWIRE_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& st = result->result.cells[row].stats;
  if (len < st.mean_f_psi.size())
    return fail(QWIRE_ERR_INVALID_ARGUMENT, "buffer too small");
  if (mean_buf)
    std::memcpy(mean_buf, st.mean_f_psi.data(), st.mean_f_psi.size() * sizeof(double));
  if (var_buf)
    std::memcpy(var_buf, st.var_f_psi.data(), st.var_f_psi.size() * sizeof(double));
  return QWIRE_OK;
}

qwire_status qwire_fit_scaling_law(const qwire_fit_point* points, size_t count,
                                   const qwire_fit_options* options, qwire_fit_report* out) {
  if (!points || !options || !out || count == 0)
    return fail(QWIRE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<qwire::FitPoint> pts(count);
    for (size_t i = 0; i < count; ++i) {
      pts[i].n_sites = points[i].n_sites;
      pts[i].sigma_onsite = points[i].sigma_onsite;
      pts[i].sigma_coupling = points[i].sigma_coupling;
      pts[i].value = points[i].value;
    }
    qwire::ScalingModel init;
    init.amplitude = options->amplitude;
    init.offset = options->offset;
    init.decay_offdiag = options->decay_offdiag;
    init.decay_diag = options->decay_diag;
    init.fixed = {options->fix_amplitude != 0, options->fix_offset != 0,
                  options->fix_decay_offdiag != 0, options->fix_decay_diag != 0};
    const qwire::FitResult r = qwire::fit_scaling_law(pts, init);
    out->amplitude = r.model.amplitude;
    out->offset = r.model.offset;
    out->decay_offdiag = r.model.decay_offdiag;
    out->decay_diag = r.model.decay_diag;
    out->rms_residual = r.rms_residual;
    out->iterations = r.iterations;
    out->converged = r.converged ? 1 : 0;
    for (int k = 0; k < 4; ++k) out->covariance_diag[k] = r.covariance_diag[k];
    return QWIRE_OK;
  });
}

double qwire_scaling_model_eval(double amplitude, double offset, double decay_offdiag,
                                double decay_diag, double n, double sigma_onsite,
                                double sigma_coupling) {
  qwire::ScalingModel m;
  m.amplitude = amplitude;
  m.offset = offset;
  m.decay_offdiag = decay_offdiag;
  m.decay_diag = decay_diag;
  return qwire::evaluate_model(m, n, sigma_onsite, sigma_coupling);
}

qwire_status qwire_held_amplitude(qwire_protocol protocol, int min_fidelity_target,
                                  double p_ideal, double mean_b, double* amplitude,
                                  double* offset) {
  if (!amplitude || !offset) return fail(QWIRE_ERR_INVALID_ARGUMENT, "null output pointer");
  qwire::held_amplitude(to_protocol(protocol),
                        min_fidelity_target ? qwire::FitTarget::kMinFidelity
                                            : qwire::FitTarget::kAvgFidelity,
                        p_ideal, mean_b, *amplitude, *offset);
  return QWIRE_OK;
}

qwire_status qwire_reference_decay(qwire_protocol protocol, int min_fidelity_target,
                                   double* decay_offdiag, double* decay_diag) {
  if (!decay_offdiag || !decay_diag)
    return fail(QWIRE_ERR_INVALID_ARGUMENT, "null output pointer");
  const qwire::ReferenceDecay r =
      qwire::reference_decay(to_protocol(protocol),
                             min_fidelity_target ? qwire::FitTarget::kMinFidelity
                                                 : qwire::FitTarget::kAvgFidelity);
  *decay_offdiag = r.decay_offdiag;
  *decay_diag = r.decay_diag;
  return QWIRE_OK;
}

}  // extern "C"
