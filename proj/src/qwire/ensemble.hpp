#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qwire/chain.hpp"
#include "qwire/measures.hpp"

namespace qwire {

// Classical threshold: best average fidelity of measure-and-resend.
inline constexpr double kClassicalFidelity = 2.0 / 3.0;

struct RealizationRecord {
  std::size_t index = 0;
  double p = 0.0;
  double delta_phi = 0.0;
  double f_avg = 0.0;
  double f_min = 0.0;
  double b_worst = 1.0;
  double concurrence = 0.0;
  std::vector<double> f_psi_at;  // F_psi per beta-grid point
};

struct EnsembleStats {
  std::size_t n_realizations = 0;
  double mean_f_avg = 0.0, var_f_avg = 0.0;
  double mean_f_min = 0.0, var_f_min = 0.0;
  double mean_concurrence = 0.0, var_concurrence = 0.0;
  double mean_b_worst = 0.0, var_b_worst = 0.0;
  double mean_p = 0.0, var_p = 0.0;
  std::vector<double> mean_f_psi, var_f_psi;  // per beta-grid point
  double pr_favg_above_cl = 0.0;  // fraction of realizations with F_avg > 2/3
  double pr_fmin_above_cl = 0.0;
};

// Pr(F_min > cl) - Pr(F_avg > cl); never positive since F_avg >= F_min
// pointwise.
double success_probability_gap(const EnsembleStats& stats);

// {0, 0.1, ..., 1.0}
std::vector<double> default_beta_grid();

struct EnsembleOptions {
  std::size_t realizations = 1000;
  std::vector<double> beta_grid = default_beta_grid();
  BVariant b_variant = BVariant::kCalculus;
  std::size_t threads = 0;  // 0 = hardware concurrency
};

RealizationRecord run_realization(const ChainSpec& ideal, const TransferOutcome& ref,
                                  const DisorderConfig& cfg, std::size_t index,
                                  std::span<const double> beta_grid,
                                  BVariant variant = BVariant::kCalculus);

// R independent realizations (indices 0..R-1) aggregated with pairwise
// summation in index order, so results are bit-identical for any thread
// count. Variances are unbiased (n-1); zero for R = 1.
EnsembleStats run_ensemble(const ChainSpec& ideal, const TransferOutcome& ref,
                           const DisorderConfig& cfg, const EnsembleOptions& opt);

enum class AlphaMode { kOptimized, kHeuristic, kExplicit };

struct SweepConfig {
  Protocol protocol = Protocol::kSpinAnalogue;
  std::vector<std::size_t> n_list;
  std::vector<double> sigma_coupling_grid;  // sigma_J axis
  std::vector<double> sigma_onsite_grid;    // sigma_eps axis
  double epsilon = 1.0;
  AlphaMode alpha_mode = AlphaMode::kOptimized;
  double alpha_value = 1.0;  // used when alpha_mode == kExplicit
  std::uint64_t master_seed = 0;
  EnsembleOptions ensemble;
};

struct SweepCell {
  std::size_t n_sites = 0;
  double sigma_coupling = 0.0;
  double sigma_onsite = 0.0;
  double alpha = 1.0;
  double tau = 0.0;
  double p_ideal = 0.0;
  double phi_ideal = 0.0;
  EnsembleStats stats;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepCell> cells;  // row-major over (n, sigma_J, sigma_eps)
};

enum class DisorderAxis { kDiagonal, kOffDiagonal };

// Full Cartesian sweep over n_list x sigma_coupling_grid x sigma_onsite_grid.
// Each cell's noise streams are keyed by (master_seed, N, sigma_J, sigma_eps),
// so a cell's numbers do not depend on which other cells are present.
SweepResult run_sweep(const SweepConfig& config);

// One disorder axis active, the other held at zero.
SweepResult sweep_1d(const SweepConfig& base, DisorderAxis axis,
                     std::span<const double> sigma_grid);

SweepResult sweep_2d(const SweepConfig& config);

}  // namespace qwire
