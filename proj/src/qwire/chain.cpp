#include "qwire/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qwire/rng.hpp"

namespace qwire {

namespace {

constexpr double kPi = std::numbers::pi;

void require_sites(std::size_t n) {
  if (n < 3) throw std::invalid_argument("chain needs at least 3 sites");
}

// Dimensionless J0' = [Nc(Nc-1)]^(-1/2), Nc = ceil(N/2).
double spin_analogue_base(std::size_t n) {
  const double nc = static_cast<double>((n + 1) / 2);
  return 1.0 / std::sqrt(nc * (nc - 1.0));
}

double ideal_p_at_alpha(std::size_t n, double epsilon, double alpha) {
  const ChainSpec spec = build_optimal_coupling(n, epsilon, alpha);
  return ideal_reference(spec).p;
}

}  // namespace

double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

ChainSpec build_spin_analogue(std::size_t n, double epsilon) {
  require_sites(n);
  ChainSpec spec;
  spec.n_sites = n;
  spec.protocol = Protocol::kSpinAnalogue;
  spec.epsilon_base = epsilon;
  spec.alpha = 1.0;
  spec.onsite.assign(n, epsilon);
  spec.couplings.resize(n - 1);
  const double j0p = spin_analogue_base(n);
  for (std::size_t i = 1; i < n; ++i) {
    const double fi = static_cast<double>(i);
    spec.couplings[i - 1] = j0p * std::sqrt(fi * (static_cast<double>(n) - fi));
  }
  // Mirror symmetry holds exactly; enforce it bitwise against sqrt rounding.
  for (std::size_t i = 0; i < spec.couplings.size() / 2; ++i)
    spec.couplings[spec.couplings.size() - 1 - i] = spec.couplings[i];
  return spec;
}

ChainSpec build_optimal_coupling(std::size_t n, double epsilon, double alpha) {
  require_sites(n);
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in (0, 1]");
  ChainSpec spec;
  spec.n_sites = n;
  spec.protocol = Protocol::kOptimalCoupling;
  spec.epsilon_base = epsilon;
  spec.alpha = alpha;
  spec.onsite.assign(n, epsilon);
  spec.couplings.assign(n - 1, 1.0);
  spec.couplings.front() = alpha;
  spec.couplings.back() = alpha;
  return spec;
}

double transfer_time(const ChainSpec& spec) {
  const double n = static_cast<double>(spec.n_sites);
  if (spec.protocol == Protocol::kSpinAnalogue)
    return kPi / (2.0 * spin_analogue_base(spec.n_sites));
  return 0.5 * n + 1.04 * std::cbrt(n);
}

TridiagonalSymmetric single_excitation_matrix(const ChainSpec& spec) {
  TridiagonalSymmetric h;
  h.diag.resize(spec.n_sites);
  for (std::size_t i = 0; i < spec.n_sites; ++i) h.diag[i] = -spec.onsite[i];
  h.offdiag = spec.couplings;
  return h;
}

ChainSpec sample_disordered(const ChainSpec& spec, const DisorderConfig& cfg,
                            std::uint64_t realization_index) {
  if (!(cfg.sigma_coupling >= 0.0) || !(cfg.sigma_onsite >= 0.0))
    throw std::invalid_argument("disorder sigmas must be non-negative");
  ChainSpec noisy = spec;
  GaussianStream gauss(cfg.master_seed, realization_index);
  for (double& j : noisy.couplings) j *= 1.0 + cfg.sigma_coupling * gauss.next();
  for (double& e : noisy.onsite) e *= 1.0 + cfg.sigma_onsite * gauss.next();
  return noisy;
}

TransferOutcome ideal_reference(const ChainSpec& ideal) {
  const double tau = transfer_time(ideal);
  const SpectralDecomposition d = eigh_tridiag(single_excitation_matrix(ideal));
  TransferOutcome out;
  out.amplitude = propagation_amplitude(d, 0, ideal.n_sites - 1, tau);
  out.p = std::norm(out.amplitude);
  out.phi = std::arg(out.amplitude);
  out.delta_phi = 0.0;
  out.tau = tau;
  return out;
}

TransferOutcome run_transfer(const ChainSpec& disordered, const TransferOutcome& reference) {
  const SpectralDecomposition d = eigh_tridiag(single_excitation_matrix(disordered));
  TransferOutcome out;
  out.amplitude = propagation_amplitude(d, 0, disordered.n_sites - 1, reference.tau);
  out.p = std::norm(out.amplitude);
  out.phi = std::arg(out.amplitude);
  out.delta_phi = wrap_phase(out.phi - reference.phi);
  out.tau = reference.tau;
  return out;
}

double heuristic_alpha(std::size_t n) {
  require_sites(n);
  return std::pow(static_cast<double>(n), -1.0 / 6.0);
}

AlphaSearch optimize_alpha_detailed(std::size_t n, double epsilon) {
  require_sites(n);
  const double alpha_h = std::min(1.0, heuristic_alpha(n));
  const double p_h = ideal_p_at_alpha(n, epsilon, alpha_h);

  // Golden-section maximization on a bracket around the heuristic seed.
  double lo = std::max(1e-4, 0.5 * alpha_h);
  double hi = std::min(1.0, 1.5 * alpha_h);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = ideal_p_at_alpha(n, epsilon, x1);
  double f2 = ideal_p_at_alpha(n, epsilon, x2);
  while (hi - lo > 1e-4) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = ideal_p_at_alpha(n, epsilon, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = ideal_p_at_alpha(n, epsilon, x1);
    }
  }
  AlphaSearch best;
  best.alpha = 0.5 * (lo + hi);
  best.p_ideal = ideal_p_at_alpha(n, epsilon, best.alpha);
  best.used_grid_fallback = false;

  if (best.p_ideal + 1e-12 < p_h) {
    // Non-unimodal landscape: fall back to a fine scan over (0, 1],
    // keeping the heuristic point as a candidate.
    best.alpha = alpha_h;
    best.p_ideal = p_h;
    best.used_grid_fallback = true;
    for (int k = 1; k <= 1000; ++k) {
      const double a = static_cast<double>(k) * 1e-3;
      const double p = ideal_p_at_alpha(n, epsilon, a);
      if (p > best.p_ideal) {
        best.alpha = a;
        best.p_ideal = p;
      }
    }
  }
  return best;
}

double optimize_alpha(std::size_t n, double epsilon) {
  return optimize_alpha_detailed(n, epsilon).alpha;
}

}  // namespace qwire
