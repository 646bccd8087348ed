#pragma once

#include <array>
#include <span>
#include <vector>

#include "qwire/ensemble.hpp"

namespace qwire {

// Gaussian robustness law G = A exp(-c N sigma_J^2 - d N sigma_eps^2) + C.
// Parameter order everywhere: {A, C, c, d} = {amplitude, offset,
// decay_offdiag, decay_diag}. fixed[k] holds parameter k at its initial
// value during fits.
struct ScalingModel {
  double amplitude = 1.0;      // A
  double offset = 0.0;         // C
  double decay_offdiag = 1.0;  // c, multiplies N sigma_J^2
  double decay_diag = 1.0;     // d, multiplies N sigma_eps^2
  std::array<bool, 4> fixed{false, false, false, false};
};

struct FitPoint {
  double n_sites = 0.0;
  double sigma_onsite = 0.0;    // sigma_eps
  double sigma_coupling = 0.0;  // sigma_J
  double value = 0.0;
};

struct FitResult {
  ScalingModel model;
  double rms_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::array<double, 4> covariance_diag{0.0, 0.0, 0.0, 0.0};
};

double evaluate_model(const ScalingModel& m, double n, double sigma_onsite,
                      double sigma_coupling);

// Damped least squares (Levenberg-style Gauss-Newton). Converges when the
// relative parameter step drops below 1e-9 or the gradient norm below 1e-10;
// gives up (converged = false, best-so-far kept) after 500 iterations.
// Throws NumericalError with condition diagnostics if the normal equations
// are singular, std::invalid_argument if the data cannot constrain the free
// parameters (fewer than 4 distinct points per free parameter).
FitResult fit_scaling_law(std::span<const FitPoint> data, const ScalingModel& init);

enum class FitTarget { kAvgFidelity, kMinFidelity };

// Disorder level at which <B> is taken for the held amplitude of the
// minimum-fidelity fit.
enum class BLevel { kGridAverage, kMaxSigma, kExplicit };

std::vector<FitPoint> fit_points(const SweepResult& sweep, FitTarget target);

FitResult fit_scaling_law(const SweepResult& sweep, FitTarget target,
                          const ScalingModel& init);

// Held amplitude/offset per protocol and target:
//   spin-analogue  F_avg: A = 1/2,              C = 1/2
//   optimal        F_avg: A = p^2/3 + p/6,      C = 1/2
//   spin-analogue  F_min: A = <B>,              C = 1 - <B>
//   optimal        F_min: A = <B>(2p^2/3+p/3),  C = 1 - <B>
// with p the protocol's ideal transfer probability and <B> the ensemble
// mean of the worst-case weight.
void held_amplitude(Protocol protocol, FitTarget target, double p_ideal,
                    double mean_b, double& amplitude, double& offset);

// Default fit for sweep data: A and C held at the formulas above (p_ideal
// averaged over the N values present; <B> chosen per b_level), c and d free
// from (1, 1).
ScalingModel default_fit_init(const SweepResult& sweep, FitTarget target,
                              BLevel b_level = BLevel::kGridAverage,
                              double explicit_b = 1.0);

// Decay constants reported by the source study, for side-by-side reports.
struct ReferenceDecay {
  double decay_offdiag = 0.0;
  double decay_diag = 0.0;
};
ReferenceDecay reference_decay(Protocol protocol, FitTarget target);

}  // namespace qwire
