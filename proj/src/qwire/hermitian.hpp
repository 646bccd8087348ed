#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qwire {

// Cyclic Jacobi eigensolver for small complex Hermitian matrices (the
// density-matrix oracles need n = 2 and n = 4). a is row-major n x n and is
// consumed; eigenvalues come out ascending with matching orthonormal columns
// in vectors (row-major, vectors[i*n+k] = component i of eigenvector k).
struct HermitianEigen {
  std::vector<double> eigenvalues;
  std::vector<std::complex<double>> vectors;
};

HermitianEigen eigh_hermitian(std::vector<std::complex<double>> a, std::size_t n);

}  // namespace qwire
