#include "qwire/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "qwire/errors.hpp"
#include "qwire/rng.hpp"

namespace qwire {

namespace {

// Pairwise (fixed reduction tree) summation over records in index order;
// deterministic regardless of how the records were produced.
double pairwise_sum(const std::vector<RealizationRecord>& recs, std::size_t lo,
                    std::size_t hi, const std::function<double(const RealizationRecord&)>& get) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += get(recs[i]);
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(recs, lo, mid, get) + pairwise_sum(recs, mid, hi, get);
}

void mean_var(const std::vector<RealizationRecord>& recs,
              const std::function<double(const RealizationRecord&)>& get,
              double& mean, double& var) {
  const std::size_t n = recs.size();
  mean = pairwise_sum(recs, 0, n, get) / static_cast<double>(n);
  if (n < 2) {
    var = 0.0;
    return;
  }
  const double mu = mean;
  var = pairwise_sum(recs, 0, n, [&](const RealizationRecord& r) {
          const double d = get(r) - mu;
          return d * d;
        }) /
        static_cast<double>(n - 1);
}

void run_indexed(std::size_t count, std::size_t threads,
                 const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count == 0 ? std::size_t{1} : count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t lo = count * t / threads;
    const std::size_t hi = count * (t + 1) / threads;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t n_sites,
                        double sigma_coupling, double sigma_onsite) {
  std::uint64_t z = SplitMix64::mix(master_seed ^ 0x243F6A8885A308D3ull);
  z = SplitMix64::mix(z ^ static_cast<std::uint64_t>(n_sites));
  z = SplitMix64::mix(z ^ std::bit_cast<std::uint64_t>(sigma_coupling));
  z = SplitMix64::mix(z ^ std::bit_cast<std::uint64_t>(sigma_onsite));
  return z;
}

ChainSpec build_ideal(Protocol protocol, std::size_t n, double epsilon,
                      AlphaMode mode, double alpha_value) {
  if (protocol == Protocol::kSpinAnalogue) return build_spin_analogue(n, epsilon);
  double alpha = alpha_value;
  if (mode == AlphaMode::kOptimized)
    alpha = optimize_alpha(n, epsilon);
  else if (mode == AlphaMode::kHeuristic)
    alpha = heuristic_alpha(n);
  return build_optimal_coupling(n, epsilon, alpha);
}

}  // namespace

std::vector<double> default_beta_grid() {
  std::vector<double> grid(11);
  for (int i = 0; i <= 10; ++i) grid[i] = static_cast<double>(i) / 10.0;
  return grid;
}

double success_probability_gap(const EnsembleStats& stats) {
  return stats.pr_fmin_above_cl - stats.pr_favg_above_cl;
}

RealizationRecord run_realization(const ChainSpec& ideal, const TransferOutcome& ref,
                                  const DisorderConfig& cfg, std::size_t index,
                                  std::span<const double> beta_grid, BVariant variant) {
  RealizationRecord rec;
  rec.index = index;
  try {
    const ChainSpec noisy = sample_disordered(ideal, cfg, index);
    const TransferOutcome out = run_transfer(noisy, ref);
    rec.p = out.p;
    rec.delta_phi = out.delta_phi;
    const MeasureSet ms = evaluate_measures(out.amplitude, out.p, out.delta_phi,
                                            beta_grid, variant);
    rec.f_avg = ms.f_avg;
    rec.f_min = ms.f_min;
    rec.b_worst = ms.b_worst;
    rec.concurrence = ms.concurrence;
    rec.f_psi_at.reserve(ms.f_psi_grid.size());
    for (const auto& [bsq, fpsi] : ms.f_psi_grid) rec.f_psi_at.push_back(fpsi);
  } catch (const NumericalError& e) {
    throw NumericalError("realization " + std::to_string(index) + ": " + e.what());
  }
  return rec;
}

EnsembleStats run_ensemble(const ChainSpec& ideal, const TransferOutcome& ref,
                           const DisorderConfig& cfg, const EnsembleOptions& opt) {
  if (opt.realizations < 1)
    throw std::invalid_argument("ensemble needs at least one realization");

  std::vector<RealizationRecord> recs(opt.realizations);
  run_indexed(opt.realizations, opt.threads, [&](std::size_t i) {
    recs[i] = run_realization(ideal, ref, cfg, i, opt.beta_grid, opt.b_variant);
  });

  EnsembleStats st;
  st.n_realizations = opt.realizations;
  mean_var(recs, [](const RealizationRecord& r) { return r.f_avg; }, st.mean_f_avg, st.var_f_avg);
  mean_var(recs, [](const RealizationRecord& r) { return r.f_min; }, st.mean_f_min, st.var_f_min);
  mean_var(recs, [](const RealizationRecord& r) { return r.concurrence; },
           st.mean_concurrence, st.var_concurrence);
  mean_var(recs, [](const RealizationRecord& r) { return r.b_worst; }, st.mean_b_worst,
           st.var_b_worst);
  mean_var(recs, [](const RealizationRecord& r) { return r.p; }, st.mean_p, st.var_p);

  const std::size_t nb = opt.beta_grid.size();
  st.mean_f_psi.resize(nb);
  st.var_f_psi.resize(nb);
  for (std::size_t k = 0; k < nb; ++k)
    mean_var(recs, [k](const RealizationRecord& r) { return r.f_psi_at[k]; },
             st.mean_f_psi[k], st.var_f_psi[k]);

  std::size_t favg_above = 0, fmin_above = 0;
  for (const auto& r : recs) {
    if (r.f_avg > kClassicalFidelity) ++favg_above;
    if (r.f_min > kClassicalFidelity) ++fmin_above;
  }
  st.pr_favg_above_cl = static_cast<double>(favg_above) / static_cast<double>(opt.realizations);
  st.pr_fmin_above_cl = static_cast<double>(fmin_above) / static_cast<double>(opt.realizations);
  return st;
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.n_list.empty() || config.sigma_coupling_grid.empty() ||
      config.sigma_onsite_grid.empty())
    throw std::invalid_argument("sweep grids must be non-empty");

  SweepResult result;
  result.config = config;
  result.cells.reserve(config.n_list.size() * config.sigma_coupling_grid.size() *
                       config.sigma_onsite_grid.size());

  for (std::size_t n : config.n_list) {
    const ChainSpec ideal =
        build_ideal(config.protocol, n, config.epsilon, config.alpha_mode, config.alpha_value);
    const TransferOutcome ref = ideal_reference(ideal);
    for (double sj : config.sigma_coupling_grid) {
      for (double se : config.sigma_onsite_grid) {
        SweepCell cell;
        cell.n_sites = n;
        cell.sigma_coupling = sj;
        cell.sigma_onsite = se;
        cell.alpha = ideal.alpha;
        cell.tau = ref.tau;
        cell.p_ideal = ref.p;
        cell.phi_ideal = ref.phi;
        DisorderConfig cfg;
        cfg.sigma_coupling = sj;
        cfg.sigma_onsite = se;
        cfg.master_seed = cell_seed(config.master_seed, n, sj, se);
        cell.stats = run_ensemble(ideal, ref, cfg, config.ensemble);
        result.cells.push_back(std::move(cell));
      }
    }
  }
  return result;
}

SweepResult sweep_1d(const SweepConfig& base, DisorderAxis axis,
                     std::span<const double> sigma_grid) {
  SweepConfig cfg = base;
  if (axis == DisorderAxis::kOffDiagonal) {
    cfg.sigma_coupling_grid.assign(sigma_grid.begin(), sigma_grid.end());
    cfg.sigma_onsite_grid = {0.0};
  } else {
    cfg.sigma_onsite_grid.assign(sigma_grid.begin(), sigma_grid.end());
    cfg.sigma_coupling_grid = {0.0};
  }
  return run_sweep(cfg);
}

SweepResult sweep_2d(const SweepConfig& config) { return run_sweep(config); }

}  // namespace qwire
