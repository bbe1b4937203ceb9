#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "majority/dynamics.hpp"
#include "majority/graph.hpp"

namespace majority {

// Upper bound (2x/p) exp(-px / (4 d^2)) on the probability that a d-bounded
// p-biased walk ever falls below -x before first exceeding x.
double martingale_bound(std::uint32_t d, double p, double x);

enum class WalkKind : std::uint8_t {
  // steps +1/-1 with P[+1] = (1+p)/2; requires p <= 1
  PlusMinusOne,
  // steps +d/-d with P[+d] = 1/4 + p/(2d), P[-d] = 1/4 - p/(2d), and
  // P[0] = 1/2; requires p <= d/2
  LazyScaled,
};

using StepSampler = std::function<std::int64_t(SplitMix64&)>;

// Result of the pre-simulation audit of a step sampler: 10^5 independent
// draws must stay inside [-d, d] and show a mean of at least p - 3 standard
// errors, otherwise the sampler violates its drift contract.
struct DriftAudit {
  double mean_step = 0.0;
  double required = 0.0;
  std::uint64_t samples = 0;
  bool passed = false;
};

struct HittingEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;   // walks that fell below -x before exceeding x
  double p_hit = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
  double bound = 0.0;       // martingale_bound(d, p, x)
  DriftAudit audit;
};

// Monte Carlo estimate of the barrier-hitting probability for a built-in
// walk.  The drift audit runs first and throws ContractError on failure.
HittingEstimate simulate_hitting(WalkKind kind, std::uint32_t d, double p,
                                 double x, std::uint64_t trials,
                                 std::uint64_t seed);

// Same, for a caller-supplied step sampler claiming the (d, p) contract.
HittingEstimate simulate_hitting_custom(const StepSampler& sampler,
                                        std::uint32_t d, double p, double x,
                                        std::uint64_t trials,
                                        std::uint64_t seed);

// The red-volume walk read off a logged trajectory: one signed step per
// color change that moves red volume (+deg on a switch into red, -deg on a
// switch out).  A step is certified when the front just before it had
// Vol(R' \cap B) >= c Vol(B' \cap R); certified steps carry conditional
// mean at least (c-1)/(c+1), which the batched audit checks with
// Bonferroni-corrected 3-sigma thresholds.
struct BiasBatch {
  std::uint64_t size = 0;
  double mean = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct CoupledWalkReport {
  std::vector<std::int64_t> steps;
  std::vector<std::uint8_t> certified;
  std::int64_t endpoint = 0;
  std::uint32_t d_bound = 0;           // max degree of the graph
  std::uint64_t certified_count = 0;
  double certified_mean = 0.0;
  double required_bias = 0.0;          // (c-1)/(c+1)
  std::vector<BiasBatch> batches;
  bool audit_passed = true;
};

// Requires a record produced with change logging and a graph with minimum
// degree at least 1 (DomainError otherwise).
CoupledWalkReport coupled_volume_walk(const Graph& g,
                                      const TrajectoryRecord& record,
                                      double c = 2.0);

}  // namespace majority
