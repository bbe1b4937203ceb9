#include "majority/walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "majority/errors.hpp"
#include "majority/rng.hpp"
#include "majority/stats.hpp"

namespace majority {

namespace {

constexpr std::uint64_t kAuditStream = 0x4472696674417564ull;
constexpr std::uint64_t kAuditSamples = 100000;
constexpr std::uint64_t kBiasBatchSize = 200;

void check_walk_params(std::uint32_t d, double p, double x) {
  if (d < 1) {
    throw ParameterError("walk bound d must be at least 1");
  }
  if (!(p > 0.0)) {
    throw ParameterError("walk drift p must be positive");
  }
  if (!(x > 0.0)) {
    throw ParameterError("barrier x must be positive");
  }
}

StepSampler make_sampler(WalkKind kind, std::uint32_t d, double p) {
  switch (kind) {
    case WalkKind::PlusMinusOne: {
      if (p > 1.0) {
        throw ParameterError("plus-minus-one walk requires p <= 1");
      }
      const double up = 0.5 * (1.0 + p);
      return [up](SplitMix64& rng) -> std::int64_t {
        return rng.bernoulli(up) ? 1 : -1;
      };
    }
    case WalkKind::LazyScaled: {
      if (p > 0.5 * d) {
        throw ParameterError("lazy scaled walk requires p <= d/2");
      }
      const double up = 0.25 + p / (2.0 * d);
      const std::int64_t step = static_cast<std::int64_t>(d);
      return [up, step](SplitMix64& rng) -> std::int64_t {
        const double u = rng.uniform01();
        if (u < up) {
          return step;
        }
        if (u < 0.5) {
          return -step;
        }
        return 0;
      };
    }
  }
  throw ParameterError("unknown walk kind");
}

DriftAudit audit_sampler(const StepSampler& sampler, std::uint32_t d, double p,
                         std::uint64_t seed) {
  SplitMix64 rng(derive_stream(seed, kAuditStream));
  const auto bound = static_cast<std::int64_t>(d);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < kAuditSamples; ++i) {
    const std::int64_t step = sampler(rng);
    if (step > bound || step < -bound) {
      throw ContractError("step sampler emitted |step| = " +
                          std::to_string(std::abs(step)) +
                          " above the declared bound d = " +
                          std::to_string(d));
    }
    const auto s = static_cast<double>(step);
    sum += s;
    sum_sq += s * s;
  }
  const auto n = static_cast<double>(kAuditSamples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  const double se = std::sqrt(var / n);

  DriftAudit audit;
  audit.mean_step = mean;
  audit.required = p - 3.0 * se;
  audit.samples = kAuditSamples;
  audit.passed = mean >= audit.required;
  if (!audit.passed) {
    throw ContractError("step sampler drift audit failed: mean step " +
                        std::to_string(mean) + " below required " +
                        std::to_string(audit.required) + " for claimed p = " +
                        std::to_string(p));
  }
  return audit;
}

HittingEstimate run_hitting(const StepSampler& sampler, std::uint32_t d,
                            double p, double x, std::uint64_t trials,
                            std::uint64_t seed) {
  check_walk_params(d, p, x);
  if (trials < 1) {
    throw ParameterError("trials must be at least 1");
  }

  HittingEstimate est;
  est.audit = audit_sampler(sampler, d, p, seed);
  est.trials = trials;
  est.bound = martingale_bound(d, p, x);

  // A p-drift walk resolves in about x/p steps; the cap only exists so a
  // sampler that defeats the audit cannot hang the simulation.
  const auto step_cap = static_cast<std::uint64_t>(10000.0 * (x / p)) + 1000000;

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(derive_stream(seed, trial));
    std::int64_t position = 0;
    bool resolved = false;
    for (std::uint64_t t = 0; t < step_cap; ++t) {
      position += sampler(rng);
      const auto value = static_cast<double>(position);
      if (value < -x) {
        ++est.hits;
        resolved = true;
        break;
      }
      if (value > x) {
        resolved = true;
        break;
      }
    }
    if (!resolved) {
      throw ContractError("walk trial " + std::to_string(trial) +
                          " did not reach either barrier within " +
                          std::to_string(step_cap) + " steps");
    }
  }

  est.p_hit = static_cast<double>(est.hits) / static_cast<double>(trials);
  const WilsonInterval ci = wilson95(est.hits, trials);
  est.wilson_lo = ci.lo;
  est.wilson_hi = ci.hi;
  return est;
}

}  // namespace

double martingale_bound(std::uint32_t d, double p, double x) {
  check_walk_params(d, p, x);
  const double dd = static_cast<double>(d) * static_cast<double>(d);
  return (2.0 * x / p) * std::exp(-p * x / (4.0 * dd));
}

HittingEstimate simulate_hitting(WalkKind kind, std::uint32_t d, double p,
                                 double x, std::uint64_t trials,
                                 std::uint64_t seed) {
  check_walk_params(d, p, x);
  return run_hitting(make_sampler(kind, d, p), d, p, x, trials, seed);
}

HittingEstimate simulate_hitting_custom(const StepSampler& sampler,
                                        std::uint32_t d, double p, double x,
                                        std::uint64_t trials,
                                        std::uint64_t seed) {
  if (!sampler) {
    throw ParameterError("step sampler must be callable");
  }
  return run_hitting(sampler, d, p, x, trials, seed);
}

CoupledWalkReport coupled_volume_walk(const Graph& g,
                                      const TrajectoryRecord& record,
                                      double c) {
  if (!(c > 1.0)) {
    throw ParameterError("certification factor c must exceed 1");
  }
  if (g.node_count() > 0 && g.min_degree() == 0) {
    throw DomainError("coupled volume walk requires minimum degree 1");
  }
  if (record.color_changes > 0 && record.changes.empty()) {
    throw ParameterError(
        "trajectory record lacks a change log; rerun with change logging");
  }
  if (record.changes.size() != record.color_changes) {
    throw ParameterError("change log length " +
                         std::to_string(record.changes.size()) +
                         " disagrees with color change count " +
                         std::to_string(record.color_changes));
  }

  CoupledWalkReport report;
  report.d_bound = g.max_degree();
  report.required_bias = (c - 1.0) / (c + 1.0);
  report.steps.reserve(record.changes.size());
  report.certified.reserve(record.changes.size());

  std::vector<double> certified_moves;
  double certified_sum = 0.0;
  for (const ChangeEvent& event : record.changes) {
    const auto deg = static_cast<std::int64_t>(g.degree(event.node));
    std::int64_t step = 0;
    if (event.to == Color::Red) {
      step = deg;
    } else if (event.from == Color::Red) {
      step = -deg;
    }
    if (step > static_cast<std::int64_t>(report.d_bound) ||
        step < -static_cast<std::int64_t>(report.d_bound)) {
      throw ContractError("walk step exceeds the maximum degree bound");
    }
    const bool cert =
        static_cast<double>(event.pre_vol_rp_in_b) >=
        c * static_cast<double>(event.pre_vol_bp_in_r);
    report.steps.push_back(step);
    report.certified.push_back(cert ? 1 : 0);
    report.endpoint += step;
    if (cert && step != 0) {
      certified_moves.push_back(static_cast<double>(step));
      certified_sum += static_cast<double>(step);
    }
  }

  report.certified_count = certified_moves.size();
  report.certified_mean =
      certified_moves.empty()
          ? 0.0
          : certified_sum / static_cast<double>(certified_moves.size());

  const std::uint64_t batch_count = certified_moves.size() / kBiasBatchSize;
  if (batch_count > 0) {
    const double z = normal_quantile(
        1.0 - 0.00135 / static_cast<double>(batch_count));
    for (std::uint64_t b = 0; b < batch_count; ++b) {
      const double* begin = certified_moves.data() + b * kBiasBatchSize;
      double sum = 0.0;
      double sum_sq = 0.0;
      for (std::uint64_t i = 0; i < kBiasBatchSize; ++i) {
        sum += begin[i];
        sum_sq += begin[i] * begin[i];
      }
      const auto nb = static_cast<double>(kBiasBatchSize);
      const double mean = sum / nb;
      const double var =
          std::max(0.0, (sum_sq - nb * mean * mean) / (nb - 1.0));
      BiasBatch batch;
      batch.size = kBiasBatchSize;
      batch.mean = mean;
      batch.threshold = report.required_bias - z * std::sqrt(var / nb);
      batch.passed = mean >= batch.threshold;
      if (!batch.passed) {
        report.audit_passed = false;
      }
      report.batches.push_back(batch);
    }
  }
  return report;
}

}  // namespace majority
