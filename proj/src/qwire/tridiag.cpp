#include "qwire/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qwire/errors.hpp"

namespace qwire {

namespace {

constexpr int kMaxSweepsPerEigenvalue = 50;

void validate(const TridiagonalSymmetric& h) {
  const std::size_t n = h.size();
  if (n < 2) throw std::invalid_argument("tridiagonal matrix needs N >= 2");
  if (h.offdiag.size() != n - 1)
    throw std::invalid_argument("offdiag must have N-1 entries");
  for (double v : h.diag)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite diagonal entry");
  for (double v : h.offdiag)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite offdiagonal entry");
}

// One plane rotation applied to columns i and i+1 of the accumulated
// eigenvector matrix z (row-major n x n).
inline void rotate_columns(std::vector<double>& z, std::size_t n, std::size_t i,
                           double c, double s) {
  for (std::size_t row = 0; row < n; ++row) {
    double* zr = &z[row * n];
    const double f = zr[i + 1];
    zr[i + 1] = s * zr[i] + c * f;
    zr[i] = c * zr[i] - s * f;
  }
}

// QL algorithm with implicit shifts on (d, e); e[i] couples i and i+1,
// e[n-1] is workspace. Eigenvectors accumulate into z (starts as identity).
void ql_implicit(std::vector<double>& d, std::vector<double>& e,
                 std::vector<double>& z, std::size_t n) {
  const double eps = std::numeric_limits<double>::epsilon();
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweepsPerEigenvalue)
          throw NumericalError("tridiagonal QL failed to converge: n=" +
                               std::to_string(n) + ", eigenvalue index " +
                               std::to_string(l) + ", " +
                               std::to_string(kMaxSweepsPerEigenvalue) +
                               " sweeps exhausted");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {  // deflate: rotation chain annihilated early
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          rotate_columns(z, n, i, c, s);
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void sort_and_fix_signs(std::vector<double>& d, std::vector<double>& z,
                        std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  std::vector<double> ds(n);
  std::vector<double> zs(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    ds[k] = d[src];
    // Largest-magnitude component positive (first such index on ties).
    std::size_t imax = 0;
    double amax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::abs(z[i * n + src]);
      if (a > amax) {
        amax = a;
        imax = i;
      }
    }
    const double sign = z[imax * n + src] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) zs[i * n + k] = sign * z[i * n + src];
  }
  d.swap(ds);
  z.swap(zs);
}

}  // namespace

SpectralDecomposition eigh_tridiag(const TridiagonalSymmetric& h) {
  validate(h);
  const std::size_t n = h.size();

  SpectralDecomposition out;
  out.n = n;
  out.eigenvalues = h.diag;
  out.vectors.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + i] = 1.0;

  std::vector<double> e(n, 0.0);
  std::copy(h.offdiag.begin(), h.offdiag.end(), e.begin());

  ql_implicit(out.eigenvalues, e, out.vectors, n);
  sort_and_fix_signs(out.eigenvalues, out.vectors, n);
  return out;
}

Complex propagation_amplitude(const SpectralDecomposition& d, std::size_t from,
                              std::size_t to, double t) {
  const std::size_t n = d.n;
  if (from >= n || to >= n) throw std::invalid_argument("site index out of range");
  if (!(t >= 0.0)) throw std::invalid_argument("propagation time must be >= 0");

  const double* vi = &d.vectors[from * n];
  const double* vj = &d.vectors[to * n];
  Complex acc(0.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = vi[k] * vj[k];
    const double ph = -d.eigenvalues[k] * t;
    acc += Complex(w * std::cos(ph), w * std::sin(ph));
  }
  return acc;
}

}  // namespace qwire
