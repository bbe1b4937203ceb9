#pragma once

#include <cstddef>
#include <vector>

namespace majority {

// Dense symmetric matrix, row-major.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct EigenDecomposition {
  std::vector<double> values;                 // ascending
  std::vector<std::vector<double>> vectors;   // vectors[k] pairs values[k]
};

// Full eigendecomposition of a symmetric matrix: Householder reduction to
// tridiagonal form, then implicit-shift QL with eigenvector accumulation.
// Throws a runtime error if QL fails to converge within its sweep budget.
EigenDecomposition sym_eigen(const DenseMatrix& m);

}  // namespace majority
