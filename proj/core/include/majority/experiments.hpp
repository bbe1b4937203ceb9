#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "majority/dynamics.hpp"
#include "majority/graph.hpp"
#include "majority/stats.hpp"

namespace majority {

// Everything a Monte Carlo run needs beyond the graph itself.  Trial i
// draws its signals and selections from derive_stream(seed, i), so results
// are a pure function of (config, graph) no matter how many workers share
// the load.
struct ExperimentConfig {
  std::string graph;  // family text or file path, recorded in reports
  double delta = 0.1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 1;         // 0 picks the hardware concurrency
  std::uint64_t max_steps = 0;  // 0 keeps the engine default budget
  std::vector<std::uint64_t> checkpoints;
  bool audit_checkpoints = false;
  bool keep_per_trial = false;
};

struct TrialSummary {
  std::uint64_t trial = 0;
  TerminalClass terminal = TerminalClass::NoConsensus;
  std::uint32_t red_count = 0;
  std::uint64_t red_volume = 0;
  bool correct_majority_nodes = false;
  bool correct_majority_volume = false;
  std::uint64_t steps = 0;
  std::uint64_t color_changes = 0;
  NodeId first_selected = 0;
  Color first_signal = Color::Uncolored;
  std::vector<Checkpoint> checkpoints;
};

struct OutcomeEstimates {
  EstimateWithCI p_red_consensus;
  EstimateWithCI p_blue_consensus;
  EstimateWithCI p_consensus;
  EstimateWithCI p_no_consensus;
  EstimateWithCI p_correct_majority_nodes;
  EstimateWithCI p_correct_majority_volume;
  double mean_steps = 0.0;
  double mean_color_changes = 0.0;
  double mean_red_volume = 0.0;
  std::vector<TrialSummary> per_trial;  // kept when config asks for it
};

// Runs config.trials independent trajectories on g and aggregates their
// terminals.  Any trial that fails to stabilize within its budget aborts
// the experiment with a NonStabilizationError naming the trial stream.
OutcomeEstimates estimate_outcomes(const Graph& g,
                                   const ExperimentConfig& cfg);

// One named assertion inside a suite report.
struct SuiteCheck {
  std::string label;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::string graph_name;
  std::string graph_hash;
  std::uint32_t nodes = 0;
  std::uint64_t edges = 0;
  double delta = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  OutcomeEstimates estimates;
  std::vector<SuiteCheck> checks;
  std::map<std::string, double> metrics;
  bool passed = true;  // conjunction of the checks
};

// Complete graph: every trial must herd to a consensus on the first
// selected node's signal, so the red-consensus rate is exactly 1/2 + delta
// up to sampling noise.
SuiteReport complete_suite(std::uint32_t n, double delta,
                           std::uint64_t trials, std::uint64_t seed,
                           unsigned workers = 1);

// Star: the red-consensus rate must clear 1 - ln(L)/(2 delta^2 L) - 1/L
// minus a fixed 0.02 sampling margin, L the leaf count.
SuiteReport star_suite(std::uint32_t leaves, double delta,
                       std::uint64_t trials, std::uint64_t seed,
                       unsigned workers = 1);

// Cycle: consensus must stay rare while the stabilized majority is almost
// always correct, and every detected blocking pair must end on its own
// signal.
SuiteReport cycle_suite(std::uint32_t n, double delta, std::uint64_t trials,
                        std::uint64_t seed, unsigned workers = 1);

// Clique with pendant leaves at m = 200 ell: blue consensus stays
// frequent (CI upper edge at least 1/6 - delta/3) and the i-th
// first-selected clique node is rarely preceded by i-1 of its own leaves.
SuiteReport gml_suite(std::uint32_t ell, double delta, std::uint64_t trials,
                      std::uint64_t seed, unsigned workers = 1);

// Random regular graph: reports lambda against delta/6, flags whether the
// expander hypothesis literally holds or only the trend is testable, and
// requires a high red-consensus rate.
SuiteReport expander_trend_suite(std::uint32_t n, std::uint32_t d,
                                 double delta, std::uint64_t trials,
                                 std::uint64_t seed, unsigned workers = 1);

// JSON for a plain estimate run: {"config": ..., "graph_hash": ...,
// "estimates": ...}.  Worker count is deliberately not serialized; output
// bytes must not depend on it.
std::string estimates_json(const ExperimentConfig& cfg,
                           const std::string& graph_hash,
                           const OutcomeEstimates& est);

std::string suite_report_json(const SuiteReport& report);

// Plot-ready CSV, one row per trial.
void write_trials_csv(std::ostream& os,
                      const std::vector<TrialSummary>& rows);

// One row per (trial, checkpoint).
void write_checkpoints_csv(std::ostream& os,
                           const std::vector<TrialSummary>& rows);

}  // namespace majority
