#include "qwire/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qwire/errors.hpp"

namespace qwire {

namespace {

using C = std::complex<double>;

double offdiag_norm2(const std::vector<C>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a[p * n + q]);
  return s;
}

}  // namespace

HermitianEigen eigh_hermitian(std::vector<C> a, std::size_t n) {
  if (a.size() != n * n) throw std::invalid_argument("matrix size mismatch");

  std::vector<C> v(n * n, C(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = C(1.0, 0.0);

  double scale2 = 0.0;
  for (const C& x : a) scale2 += std::norm(x);
  const double tol2 = std::max(scale2, 1.0) * 1e-30;

  const int max_sweeps = 100;
  int sweep = 0;
  while (offdiag_norm2(a, n) > tol2) {
    if (++sweep > max_sweeps)
      throw NumericalError("hermitian Jacobi failed to converge");
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const C b = a[p * n + q];
        const double babs = std::abs(b);
        if (babs == 0.0) continue;
        const C phase = b / babs;  // e^{i theta}
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double tau = (app - aqq) / (2.0 * babs);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const C se_m = s * std::conj(phase);  // s e^{-i theta}
        const C se_p = s * phase;             // s e^{+i theta}

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const C akp = a[k * n + p];
          const C akq = a[k * n + q];
          a[k * n + p] = akp * c + akq * se_m;
          a[k * n + q] = akq * c - akp * se_p;
          a[p * n + k] = std::conj(a[k * n + p]);
          a[q * n + k] = std::conj(a[k * n + q]);
        }
        const double app2 = app * c * c + 2.0 * babs * c * s + aqq * s * s;
        const double aqq2 = app * s * s - 2.0 * babs * c * s + aqq * c * c;
        a[p * n + p] = C(app2, 0.0);
        a[q * n + q] = C(aqq2, 0.0);
        a[p * n + q] = C(0.0, 0.0);
        a[q * n + p] = C(0.0, 0.0);

        for (std::size_t k = 0; k < n; ++k) {
          const C vkp = v[k * n + p];
          const C vkq = v[k * n + q];
          v[k * n + p] = vkp * c + vkq * se_m;
          v[k * n + q] = vkq * c - vkp * se_p;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x].real() < a[y * n + y].real();
  });

  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.vectors.assign(n * n, C(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a[order[k] * n + order[k]].real();
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = v[i * n + order[k]];
  }
  return out;
}

}  // namespace qwire
