#include "qwire/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "qwire/errors.hpp"

namespace qwire {

namespace {

std::array<double, 4> pack(const ScalingModel& m) {
  return {m.amplitude, m.offset, m.decay_offdiag, m.decay_diag};
}

void unpack(const std::array<double, 4>& p, ScalingModel& m) {
  m.amplitude = p[0];
  m.offset = p[1];
  m.decay_offdiag = p[2];
  m.decay_diag = p[3];
}

double model_at(const std::array<double, 4>& p, const FitPoint& pt) {
  return p[0] * std::exp(-p[2] * pt.n_sites * pt.sigma_coupling * pt.sigma_coupling -
                         p[3] * pt.n_sites * pt.sigma_onsite * pt.sigma_onsite) +
         p[1];
}

void jacobian_row(const std::array<double, 4>& p, const FitPoint& pt,
                  std::array<double, 4>& row) {
  const double xj = pt.n_sites * pt.sigma_coupling * pt.sigma_coupling;
  const double xe = pt.n_sites * pt.sigma_onsite * pt.sigma_onsite;
  const double e = std::exp(-p[2] * xj - p[3] * xe);
  row[0] = e;
  row[1] = 1.0;
  row[2] = -p[0] * xj * e;
  row[3] = -p[0] * xe * e;
}

double sum_sq_residual(const std::array<double, 4>& p, std::span<const FitPoint> data) {
  double s = 0.0;
  for (const FitPoint& pt : data) {
    const double r = model_at(p, pt) - pt.value;
    s += r * r;
  }
  return s;
}

// Cholesky solve of the k x k SPD system a x = b; returns false on a
// non-positive pivot.
bool solve_spd(std::vector<double>& a, std::vector<double>& b, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * k + j];
      for (std::size_t m = 0; m < j; ++m) s -= a[i * k + m] * a[j * k + m];
      if (i == j) {
        if (s <= 0.0) return false;
        a[i * k + i] = std::sqrt(s);
      } else {
        a[i * k + j] = s / a[j * k + j];
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    double s = b[i];
    for (std::size_t m = 0; m < i; ++m) s -= a[i * k + m] * b[m];
    b[i] = s / a[i * k + i];
  }
  for (std::size_t i = k; i-- > 0;) {
    double s = b[i];
    for (std::size_t m = i + 1; m < k; ++m) s -= a[m * k + i] * b[m];
    b[i] = s / a[i * k + i];
  }
  return true;
}

}  // namespace

double evaluate_model(const ScalingModel& m, double n, double sigma_onsite,
                      double sigma_coupling) {
  FitPoint pt;
  pt.n_sites = n;
  pt.sigma_onsite = sigma_onsite;
  pt.sigma_coupling = sigma_coupling;
  return model_at(pack(m), pt);
}

FitResult fit_scaling_law(std::span<const FitPoint> data, const ScalingModel& init) {
  std::vector<int> free_idx;
  for (int k = 0; k < 4; ++k)
    if (!init.fixed[k]) free_idx.push_back(k);
  const std::size_t nf = free_idx.size();

  std::set<std::tuple<double, double, double>> distinct;
  for (const FitPoint& pt : data)
    distinct.insert({pt.n_sites, pt.sigma_onsite, pt.sigma_coupling});
  if (distinct.size() < 4 * nf)
    throw std::invalid_argument("fit needs at least 4 distinct grid points per free parameter");

  FitResult result;
  result.model = init;
  std::array<double, 4> params = pack(init);

  if (nf == 0) {
    result.converged = true;
    result.rms_residual =
        std::sqrt(sum_sq_residual(params, data) / static_cast<double>(data.size()));
    return result;
  }

  double cost = sum_sq_residual(params, data);
  double lambda = 1e-3;
  constexpr int kMaxIterations = 500;
  constexpr double kStepTol = 1e-9;
  constexpr double kGradTol = 1e-10;

  std::vector<double> jtj(nf * nf), jtr(nf);
  std::array<double, 4> row{};
  int iter = 0;
  for (; iter < kMaxIterations; ++iter) {
    std::fill(jtj.begin(), jtj.end(), 0.0);
    std::fill(jtr.begin(), jtr.end(), 0.0);
    for (const FitPoint& pt : data) {
      jacobian_row(params, pt, row);
      const double r = model_at(params, pt) - pt.value;
      for (std::size_t a = 0; a < nf; ++a) {
        jtr[a] += row[free_idx[a]] * r;
        for (std::size_t b = 0; b <= a; ++b)
          jtj[a * nf + b] += row[free_idx[a]] * row[free_idx[b]];
      }
    }
    for (std::size_t a = 0; a < nf; ++a)
      for (std::size_t b = a + 1; b < nf; ++b) jtj[a * nf + b] = jtj[b * nf + a];

    double grad_norm = 0.0;
    for (double g : jtr) grad_norm = std::max(grad_norm, std::abs(g));
    if (grad_norm < kGradTol) {
      result.converged = true;
      break;
    }

    double diag_min = jtj[0], diag_max = jtj[0];
    for (std::size_t a = 0; a < nf; ++a) {
      diag_min = std::min(diag_min, jtj[a * nf + a]);
      diag_max = std::max(diag_max, jtj[a * nf + a]);
    }
    if (diag_min <= 0.0 || !std::isfinite(diag_max))
      throw NumericalError(
          "singular normal equations: J^T J diagonal range [" +
          std::to_string(diag_min) + ", " + std::to_string(diag_max) +
          "]; a free parameter has no leverage on the data");

    bool stepped = false;
    for (int attempt = 0; attempt < 32 && !stepped; ++attempt) {
      std::vector<double> a(jtj);
      std::vector<double> b(nf);
      for (std::size_t i = 0; i < nf; ++i) {
        a[i * nf + i] += lambda * jtj[i * nf + i];
        b[i] = -jtr[i];
      }
      if (!solve_spd(a, b, nf)) {
        lambda *= 10.0;
        continue;
      }
      std::array<double, 4> trial = params;
      double step = 0.0;
      for (std::size_t i = 0; i < nf; ++i) {
        trial[free_idx[i]] += b[i];
        step = std::max(step, std::abs(b[i]) / (std::abs(params[free_idx[i]]) + 1e-30));
      }
      const double trial_cost = sum_sq_residual(trial, data);
      if (trial_cost <= cost) {
        params = trial;
        cost = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        if (step < kStepTol) {
          result.converged = true;
          ++iter;
          goto done;
        }
      } else {
        lambda *= 3.0;
      }
    }
    if (!stepped) {
      // Damping exhausted without an acceptable step; the current point is
      // a numerical optimum.
      result.converged = true;
      break;
    }
  }
done:
  result.iterations = iter;
  unpack(params, result.model);
  result.model.fixed = init.fixed;
  result.rms_residual =
      std::sqrt(sum_sq_residual(params, data) / static_cast<double>(data.size()));

  // Parameter covariance diag from sigma^2 (J^T J)^-1, free parameters only.
  if (data.size() > nf) {
    std::fill(jtj.begin(), jtj.end(), 0.0);
    for (const FitPoint& pt : data) {
      jacobian_row(params, pt, row);
      for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b <= a; ++b)
          jtj[a * nf + b] += row[free_idx[a]] * row[free_idx[b]];
    }
    for (std::size_t a = 0; a < nf; ++a)
      for (std::size_t b = a + 1; b < nf; ++b) jtj[a * nf + b] = jtj[b * nf + a];
    const double sigma2 = cost / static_cast<double>(data.size() - nf);
    // Invert column by column through Cholesky solves.
    for (std::size_t col = 0; col < nf; ++col) {
      std::vector<double> a(jtj);
      std::vector<double> e(nf, 0.0);
      e[col] = 1.0;
      if (solve_spd(a, e, nf))
        result.covariance_diag[free_idx[col]] = sigma2 * e[col];
    }
  }
  return result;
}

std::vector<FitPoint> fit_points(const SweepResult& sweep, FitTarget target) {
  std::vector<FitPoint> pts;
  pts.reserve(sweep.cells.size());
  for (const SweepCell& cell : sweep.cells) {
    FitPoint pt;
    pt.n_sites = static_cast<double>(cell.n_sites);
    pt.sigma_onsite = cell.sigma_onsite;
    pt.sigma_coupling = cell.sigma_coupling;
    pt.value = target == FitTarget::kAvgFidelity ? cell.stats.mean_f_avg
                                                 : cell.stats.mean_f_min;
    pts.push_back(pt);
  }
  return pts;
}

FitResult fit_scaling_law(const SweepResult& sweep, FitTarget target,
                          const ScalingModel& init) {
  const std::vector<FitPoint> pts = fit_points(sweep, target);
  return fit_scaling_law(pts, init);
}

void held_amplitude(Protocol protocol, FitTarget target, double p_ideal,
                    double mean_b, double& amplitude, double& offset) {
  if (target == FitTarget::kAvgFidelity) {
    amplitude = protocol == Protocol::kSpinAnalogue
                    ? 0.5
                    : p_ideal * p_ideal / 3.0 + p_ideal / 6.0;
    offset = 0.5;
  } else {
    amplitude = protocol == Protocol::kSpinAnalogue
                    ? mean_b
                    : mean_b * (2.0 * p_ideal * p_ideal / 3.0 + p_ideal / 3.0);
    offset = 1.0 - mean_b;
  }
}

ScalingModel default_fit_init(const SweepResult& sweep, FitTarget target,
                              BLevel b_level, double explicit_b) {
  if (sweep.cells.empty()) throw std::invalid_argument("empty sweep result");

  // Ideal p averaged over the N values present (it varies slightly with N
  // for the optimal-coupling protocol; the model has a single amplitude).
  double p_sum = 0.0;
  std::set<std::size_t> seen;
  for (const SweepCell& cell : sweep.cells)
    if (seen.insert(cell.n_sites).second) p_sum += cell.p_ideal;
  const double p_ideal = p_sum / static_cast<double>(seen.size());

  double mean_b = explicit_b;
  if (b_level == BLevel::kGridAverage) {
    double s = 0.0;
    for (const SweepCell& cell : sweep.cells) s += cell.stats.mean_b_worst;
    mean_b = s / static_cast<double>(sweep.cells.size());
  } else if (b_level == BLevel::kMaxSigma) {
    double best = -1.0;
    for (const SweepCell& cell : sweep.cells) {
      const double r = cell.sigma_coupling * cell.sigma_coupling +
                       cell.sigma_onsite * cell.sigma_onsite;
      if (r > best) {
        best = r;
        mean_b = cell.stats.mean_b_worst;
      }
    }
  }

  ScalingModel init;
  held_amplitude(sweep.config.protocol, target, p_ideal, mean_b, init.amplitude,
                 init.offset);
  init.decay_offdiag = 1.0;
  init.decay_diag = 1.0;
  init.fixed = {true, true, false, false};
  return init;
}

ReferenceDecay reference_decay(Protocol protocol, FitTarget target) {
  if (protocol == Protocol::kSpinAnalogue)
    return target == FitTarget::kAvgFidelity ? ReferenceDecay{1.07, 0.7}
                                             : ReferenceDecay{1.07, 0.8};
  return target == FitTarget::kAvgFidelity ? ReferenceDecay{1.2, 0.46}
                                           : ReferenceDecay{1.2, 0.40};
}

}  // namespace qwire
