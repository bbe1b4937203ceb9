#pragma once

#include <cstdint>

#include "majority/graph.hpp"

namespace majority {

inline constexpr NodeId kExactDistributionCap = 8;
inline constexpr NodeId kExactExpectationCap = 6;
inline constexpr std::uint64_t kExactExpectationHorizonCap = 12;
// Transient blocks up to this size go through dense LU; larger ones fall
// back to Jacobi iteration.
inline constexpr std::size_t kDenseTransientCap = 4000;

// Exact absorption analysis of the selection chain, marginalized over all
// 2^n signal assignments with their (1/2 + delta)-biased weights.  For each
// assignment the reachable colorings form an absorbing Markov chain whose
// absorbing states are exactly the stable colorings; absorption
// probabilities and expected color-change counts come from linear solves on
// the transient block, verified to residual 1e-12.
struct OutcomeDistribution {
  double p_red_consensus = 0.0;
  double p_blue_consensus = 0.0;
  double p_consensus = 0.0;
  double p_no_consensus = 0.0;
  double p_correct_majority_nodes = 0.0;
  double mean_color_changes = 0.0;
  double max_residual = 0.0;          // worst solve residual encountered
  std::size_t max_transient = 0;      // largest transient block encountered
  bool used_iterative = false;        // some block exceeded the dense cap
};

// Hard cap n <= 8 (SizeError above).
OutcomeDistribution exact_distribution(const Graph& g, double delta);

// Exact expected red volume after exactly `horizon` selections, by evolving
// the full distribution over reachable colorings: `announced` counts only
// announced-red nodes, `credited` also credits every still-uncolored node
// with its own signal.  Hard caps n <= 6, horizon <= 12 (SizeError).
struct ExactRedVolume {
  double announced = 0.0;
  double credited = 0.0;
};

ExactRedVolume exact_expected_red_volume(const Graph& g, double delta,
                                         std::uint64_t horizon);

}  // namespace majority
