#include "qwire/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qwire/errors.hpp"
#include "qwire/hermitian.hpp"

namespace qwire {

namespace {

void require_probability(double p) {
  if (!(p >= 0.0) || p > 1.0 + 1e-12)
    throw std::invalid_argument("transfer probability must lie in [0, 1]");
}

// F_psi is the quadratic 1 + a x + b x^2 in x = |beta|^2.
void quadratic_coeffs(double p, double delta_phi, double& a, double& b) {
  const double sp = std::sqrt(std::min(p, 1.0));
  const double cd = std::cos(delta_phi);
  a = -1.0 - p + 2.0 * sp * cd;
  b = 2.0 * p - 2.0 * sp * cd;
}

}  // namespace

double fidelity_psi(double beta_sq, double p, double delta_phi) {
  require_probability(p);
  if (!(beta_sq >= 0.0) || beta_sq > 1.0)
    throw std::invalid_argument("|beta|^2 must lie in [0, 1]");
  double a, b;
  quadratic_coeffs(p, delta_phi, a, b);
  const double f = 1.0 + a * beta_sq + b * beta_sq * beta_sq;
  if (f < -1e-12 || f > 1.0 + 1e-12)
    throw NumericalError("fidelity escaped [0,1]: " + std::to_string(f));
  return std::clamp(f, 0.0, 1.0);
}

double avg_fidelity(double p, double delta_phi) {
  require_probability(p);
  return 0.5 + p / 6.0 + std::sqrt(std::min(p, 1.0)) * std::cos(delta_phi) / 3.0;
}

double worst_case_beta(double p, double delta_phi, BVariant variant) {
  require_probability(p);
  if (variant == BVariant::kPaperEq15) {
    const double sp = std::sqrt(std::min(p, 1.0));
    const double cd = std::cos(delta_phi);
    const double den = 4.0 * (p - 2.0 * sp * cd);
    if (den != 0.0) {
      const double x = (1.0 + p - sp * cd) / den;
      if (x >= 0.0 && x <= 1.0) return x;
    }
    return 1.0;
  }
  double a, b;
  quadratic_coeffs(p, delta_phi, a, b);
  if (b > 0.0) {
    const double x = -a / (2.0 * b);
    if (x >= 0.0 && x <= 1.0) return x;
  }
  // Concave, linear, or flat cases: F(1) = p <= 1 = F(0), so the endpoint
  // x = 1 minimizes (also the p = 1, dphi = 0 flat-case convention).
  return 1.0;
}

MinFidelity min_fidelity(double p, double delta_phi, BVariant variant) {
  MinFidelity out;
  out.b_worst = worst_case_beta(p, delta_phi, variant);
  out.f_min = fidelity_psi(out.b_worst, p, delta_phi);
  return out;
}

double concurrence_from_amplitude(Complex f) {
  const double mod = std::abs(f);
  if (mod > 1.0 + 1e-12)
    throw std::invalid_argument("amplitude modulus exceeds 1");
  return std::min(mod, 1.0);
}

TwoQubitDensityMatrix two_qubit_output_state(Complex f) {
  const double p = std::norm(f);
  if (p > 1.0 + 1e-12) throw std::invalid_argument("amplitude modulus exceeds 1");
  TwoQubitDensityMatrix rho;
  // Basis |00>,|01>,|10>,|11>; (|00>+f|11>)(<00|+f*<11|) plus the |10> weight.
  rho.m[0 * 4 + 0] = 0.5;
  rho.m[0 * 4 + 3] = 0.5 * std::conj(f);
  rho.m[3 * 4 + 0] = 0.5 * f;
  rho.m[3 * 4 + 3] = 0.5 * p;
  rho.m[2 * 4 + 2] = 0.5 * (1.0 - p);
  return rho;
}

double wootters_concurrence(const TwoQubitDensityMatrix& rho) {
  std::vector<Complex> r(rho.m.begin(), rho.m.end());

  double trace = 0.0;
  for (int i = 0; i < 4; ++i) trace += r[i * 4 + i].real();
  double herm = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) herm = std::max(herm, std::abs(r[i * 4 + j] - std::conj(r[j * 4 + i])));
  if (std::abs(trace - 1.0) > 1e-9 || herm > 1e-9)
    throw std::invalid_argument("input is not a unit-trace Hermitian matrix");

  HermitianEigen er = eigh_hermitian(r, 4);
  if (er.eigenvalues.front() < -1e-9)
    throw std::invalid_argument("input density matrix is not positive semidefinite");

  // sqrt(rho) from the spectral form, negative dust clipped.
  std::vector<Complex> sq(16, Complex(0, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex s(0, 0);
      for (int k = 0; k < 4; ++k) {
        const double lk = std::sqrt(std::max(er.eigenvalues[k], 0.0));
        s += er.vectors[i * 4 + k] * lk * std::conj(er.vectors[j * 4 + k]);
      }
      sq[i * 4 + j] = s;
    }

  // rho~ = (sy x sy) rho* (sy x sy); the spin-flip has +-1 entries on the
  // antidiagonal: (sy x sy)[i][3-i] = {-1, 1, 1, -1}.
  static const double flip[4] = {-1.0, 1.0, 1.0, -1.0};
  std::vector<Complex> tilde(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      tilde[i * 4 + j] = flip[i] * flip[j] * std::conj(r[(3 - i) * 4 + (3 - j)]);

  // M = sqrt(rho) rho~ sqrt(rho), Hermitian PSD with the same spectrum as
  // rho rho~.
  std::vector<Complex> tmp(16, Complex(0, 0)), m(16, Complex(0, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex s(0, 0);
      for (int k = 0; k < 4; ++k) s += sq[i * 4 + k] * tilde[k * 4 + j];
      tmp[i * 4 + j] = s;
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex s(0, 0);
      for (int k = 0; k < 4; ++k) s += tmp[i * 4 + k] * sq[k * 4 + j];
      m[i * 4 + j] = s;
    }
  // Symmetrize away roundoff before the eigensolve.
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const Complex avg = 0.5 * (m[i * 4 + j] + std::conj(m[j * 4 + i]));
      m[i * 4 + j] = avg;
      m[j * 4 + i] = std::conj(avg);
    }

  HermitianEigen em = eigh_hermitian(m, 4);
  double lam[4];
  for (int k = 0; k < 4; ++k)
    lam[k] = std::sqrt(std::max(em.eigenvalues[3 - k], 0.0));  // descending
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

QubitDensityMatrix reduced_output_qubit(double beta_sq, double alpha_phase, Complex f) {
  if (!(beta_sq >= 0.0) || beta_sq > 1.0)
    throw std::invalid_argument("|beta|^2 must lie in [0, 1]");
  const double p = std::norm(f);
  const Complex alpha = std::polar(std::sqrt(1.0 - beta_sq), alpha_phase);
  const double beta = std::sqrt(beta_sq);
  QubitDensityMatrix rho;
  rho.m[0] = 1.0 - beta_sq * p;              // <0|rho|0>
  rho.m[1] = alpha * beta * std::conj(f);    // <0|rho|1>
  rho.m[2] = std::conj(alpha) * beta * f;    // <1|rho|0>
  rho.m[3] = beta_sq * p;                    // <1|rho|1>
  return rho;
}

double qubit_fidelity(const QubitDensityMatrix& a, const QubitDensityMatrix& b) {
  Complex tr(0, 0);
  tr += a.m[0] * b.m[0] + a.m[1] * b.m[2];
  tr += a.m[2] * b.m[1] + a.m[3] * b.m[3];
  const Complex deta = a.m[0] * a.m[3] - a.m[1] * a.m[2];
  const Complex detb = b.m[0] * b.m[3] - b.m[1] * b.m[2];
  const double f = tr.real() + 2.0 * std::sqrt(std::max(0.0, deta.real()) *
                                               std::max(0.0, detb.real()));
  return std::clamp(f, 0.0, 1.0);
}

MeasureSet evaluate_measures(Complex amplitude, double p, double delta_phi,
                             std::span<const double> beta_grid, BVariant variant) {
  MeasureSet out;
  out.f_avg = avg_fidelity(p, delta_phi);
  const MinFidelity mf = min_fidelity(p, delta_phi, variant);
  out.f_min = mf.f_min;
  out.b_worst = mf.b_worst;
  out.concurrence = concurrence_from_amplitude(amplitude);
  out.f_psi_grid.reserve(beta_grid.size());
  for (double x : beta_grid)
    out.f_psi_grid.emplace_back(x, fidelity_psi(x, p, delta_phi));
  return out;
}

}  // namespace qwire
