#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "majority/graph.hpp"
#include "majority/sym_eigen.hpp"

namespace majority {

// Hard cap for dense spectral work; larger graphs must use the sparse
// lambda estimator.
inline constexpr NodeId kDenseSpectralCap = 2000;

// Degree-weighted adjacency: M(x,y) = 1/sqrt(d(x) d(y)) when x ~ y, else 0.
// Requires no isolated vertices (DomainError) and n <= kDenseSpectralCap
// (SizeError).
DenseMatrix weighted_adjacency(const Graph& g);

struct SpectralReport {
  std::vector<double> eigenvalues;  // descending
  double lambda = 0.0;              // max(|second largest|, |smallest|)
  double max_residual = 0.0;        // worst ||Mv - lambda v||_2 over pairs

  bool expander_at(double threshold) const { return lambda <= threshold; }
};

// Exact spectrum through the dense solver.  Requires a connected graph with
// no isolated vertices and n <= kDenseSpectralCap.  Verifies that every
// eigenvalue lies in [-1, 1] within 1e-9, that the top eigenvalue is 1
// within 1e-8, and that every eigenpair residual is at most 1e-8.
SpectralReport spectrum(const Graph& g);

// Sparse lambda estimate for graphs beyond the dense cap: power iteration
// on M^2 restricted to the orthogonal complement of the principal
// eigenvector, which is exactly (sqrt(d(v)))_v after normalization.
struct LambdaEstimate {
  double lambda = 0.0;
  std::uint64_t iterations = 0;
  double residual = 0.0;  // ||M^2 x - rho x||_2 at the returned iterate
  bool converged = false;
};

LambdaEstimate estimate_lambda(const Graph& g, std::uint64_t seed,
                               std::uint64_t max_iterations = 200000,
                               double tolerance = 1e-9);

// Plain power iteration on M; converges to the top eigenvalue, which is 1
// for any connected graph.  Used as an independent check on the dense
// solver.
double estimate_top_eigenvalue(const Graph& g, std::uint64_t seed,
                               std::uint64_t iterations = 2000);

// One instance of the mixing inequality
//   |E(S,T) - Vol(S)Vol(T)/Vol(V)| <= lambda sqrt(Vol(S)Vol(T)).
// E(S,T) counts ordered adjacent pairs, so edges inside S \cap T count
// twice.
struct MixingCheck {
  std::uint64_t e_st = 0;
  std::uint64_t vol_s = 0;
  std::uint64_t vol_t = 0;
  double expected = 0.0;  // Vol(S)Vol(T)/Vol(V)
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

MixingCheck mixing_check(const Graph& g, double lambda,
                         std::span<const NodeId> s_nodes,
                         std::span<const NodeId> t_nodes);

}  // namespace majority
