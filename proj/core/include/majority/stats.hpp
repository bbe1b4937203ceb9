#pragma once

#include <cstdint>

namespace majority {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double p) const { return lo <= p && p <= hi; }
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials);

// Inverse standard normal CDF (Acklam's rational approximation, relative
// error below 1.2e-9).  p must lie in (0, 1).
double normal_quantile(double p);

// A Monte Carlo proportion with its 95% Wilson interval.
struct EstimateWithCI {
  double point = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

EstimateWithCI make_estimate(std::uint64_t successes, std::uint64_t trials);

}  // namespace majority
