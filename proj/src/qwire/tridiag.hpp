#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qwire {

using Complex = std::complex<double>;

// Real symmetric tridiagonal matrix. diag holds the N main-diagonal
// entries, offdiag the N-1 sub/superdiagonal entries, both in units of J0.
struct TridiagonalSymmetric {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }
};

// Full spectrum of a TridiagonalSymmetric. Eigenvalues are ascending and
// vector(i, k) is the i-th component of the eigenvector paired with
// eigenvalues[k]. Columns are orthonormal; the sign convention makes the
// largest-magnitude component of each column positive.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<double> vectors;  // row-major, n x n
  std::size_t n = 0;

  double vector(std::size_t site, std::size_t k) const { return vectors[site * n + k]; }
};

// Implicit-shift QL iteration with eigenvector accumulation. Throws
// NumericalError if any eigenvalue needs more than 50 sweeps and
// std::invalid_argument for malformed input (N < 2, non-finite entries).
SpectralDecomposition eigh_tridiag(const TridiagonalSymmetric& h);

// <to| exp(-i H t) |from> in the single-excitation basis, sites 0-based.
Complex propagation_amplitude(const SpectralDecomposition& d, std::size_t from,
                              std::size_t to, double t);

}  // namespace qwire
