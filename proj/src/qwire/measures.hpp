#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "qwire/tridiag.hpp"

namespace qwire {

// Worst-case input weight |beta|^2 = B: the calculus minimizer of the
// single-realization fidelity, or the expression printed in the source
// material (kept for comparison; it does not minimize the fidelity).
enum class BVariant { kCalculus, kPaperEq15 };

// Single-realization fidelity F_psi(|beta|^2, p, dphi)
//   = 1 + x(-1 - p + 2 sqrt(p) cos dphi) + x^2 (2p - 2 sqrt(p) cos dphi).
// Values outside [0,1] by more than 1e-12 raise NumericalError; smaller
// excursions are clamped.
double fidelity_psi(double beta_sq, double p, double delta_phi);

// Average over all pure input states: 1/2 + p/6 + sqrt(p) cos(dphi)/3.
double avg_fidelity(double p, double delta_phi);

double worst_case_beta(double p, double delta_phi,
                       BVariant variant = BVariant::kCalculus);

struct MinFidelity {
  double f_min = 0.0;
  double b_worst = 1.0;
};
MinFidelity min_fidelity(double p, double delta_phi,
                         BVariant variant = BVariant::kCalculus);

// Concurrence of the distributed two-qubit state: |f|.
double concurrence_from_amplitude(Complex f);

// 2x2 and 4x4 density matrices, row-major; the 4x4 basis order is
// |00>, |01>, |10>, |11>.
struct QubitDensityMatrix {
  std::array<Complex, 4> m{};
};
struct TwoQubitDensityMatrix {
  std::array<Complex, 16> m{};
};

// rho_{1',N} after distributing one half of a Bell pair through the chain:
// 1/2 { (1-|f|^2)|10><10| + (|00>+f|11>)(<00|+f*<11|) }.
TwoQubitDensityMatrix two_qubit_output_state(Complex f);

// Wootters concurrence max(0, l1-l2-l3-l4); throws on non-PSD/non-unit-trace
// input beyond 1e-9 tolerances.
double wootters_concurrence(const TwoQubitDensityMatrix& rho);

// Reduced state of the receiving site for input sqrt(1-x)e^{i phase}|0> +
// sqrt(x)|1> and end-to-end amplitude f.
QubitDensityMatrix reduced_output_qubit(double beta_sq, double alpha_phase, Complex f);

// Uhlmann fidelity specialized to qubits: tr(ab) + 2 sqrt(det a det b).
double qubit_fidelity(const QubitDensityMatrix& a, const QubitDensityMatrix& b);

// Everything the ensemble tracks for one realization.
struct MeasureSet {
  double f_avg = 0.0;
  double f_min = 0.0;
  double b_worst = 1.0;
  double concurrence = 0.0;
  std::vector<std::pair<double, double>> f_psi_grid;  // (beta_sq, F_psi)
};

MeasureSet evaluate_measures(Complex amplitude, double p, double delta_phi,
                             std::span<const double> beta_grid,
                             BVariant variant = BVariant::kCalculus);

}  // namespace qwire
