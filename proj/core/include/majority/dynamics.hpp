#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "majority/graph.hpp"
#include "majority/rng.hpp"

namespace majority {

// Red is the ground-truth color by convention.
enum class Color : std::uint8_t { Red = 0, Blue = 1, Uncolored = 2 };

char color_char(Color c);

// What a node announces when selected: the strict majority color among its
// colored neighbors, or its private signal on ties (uncolored neighbors
// count toward neither side).
Color announce_rule(std::uint32_t red_neighbors, std::uint32_t blue_neighbors,
                    Color signal);

// Private signals.  Each node independently sees Red with probability
// 1/2 + delta, 0 < delta <= 1/2.
struct SignalAssignment {
  std::vector<Color> signals;
  double delta = 0.0;

  static SignalAssignment sample(NodeId n, double delta, SplitMix64& rng);
  // Validates that every entry is Red or Blue.
  static SignalAssignment fixed(std::vector<Color> signals, double delta);
};

// Front decomposition of a state:
//   R  = announced red            B  = announced blue or nothing
//   R' = would announce red       B' = would announce blue
// plus the crossing volumes Vol(R' \cap B) and Vol(B' \cap R).
struct FrontVolumes {
  std::uint64_t vol_r = 0;
  std::uint64_t vol_b = 0;
  std::uint64_t vol_r_prime = 0;
  std::uint64_t vol_b_prime = 0;
  std::uint64_t vol_rp_in_b = 0;
  std::uint64_t vol_bp_in_r = 0;
  std::uint32_t count_r = 0;
  std::uint32_t count_b = 0;
};

// Live state of one trajectory with O(1)-amortized bookkeeping: per-node
// colored-neighbor counts, would-announce colors, red/blue volumes, the
// instability count, the potential, and the front volumes are all
// maintained incrementally; step(v) costs O(d(v)).
class DynamicsState {
 public:
  DynamicsState(const Graph& g, SignalAssignment signals);

  // Rebuilds a state from an arbitrary coloring (tests and the exact
  // chain; trajectories always start all-uncolored).
  static DynamicsState from_coloring(const Graph& g, SignalAssignment signals,
                                     const std::vector<Color>& colors);

  // Applies the update rule to v.  Returns true when v's color changed.
  // Every change must strictly decrease the potential; a violation throws
  // std::logic_error.
  bool step(NodeId v);

  const Graph& graph() const { return *graph_; }
  const SignalAssignment& signals() const { return signals_; }
  Color color(NodeId v) const { return colors_[v]; }
  const std::vector<Color>& colors() const { return colors_; }
  Color would_announce(NodeId v) const { return would_[v]; }

  std::uint64_t time() const { return t_; }
  std::uint64_t color_change_count() const { return changes_; }
  std::uint32_t red_count() const { return red_count_; }
  std::uint32_t blue_count() const { return blue_count_; }
  std::uint32_t uncolored_count() const { return uncolored_count_; }
  std::uint64_t red_volume() const { return red_volume_; }
  std::uint64_t blue_volume() const { return blue_volume_; }

  // Announced-red volume plus the volume of uncolored nodes whose signal
  // is red: the red volume the state would carry if every silent node
  // were credited with its own signal.
  std::uint64_t credited_red_volume() const;

  std::uint32_t unstable_count() const { return unstable_count_; }
  bool stable() const { return unstable_count_ == 0; }

  // Potential of the state: sum over nodes of [uncolored or announcing
  // against the signal] plus twice the number of edges with an uncolored
  // or disagreeing endpoint pair.  Starts at |V| + 2|E| and strictly
  // decreases with every color change.
  std::uint64_t potential() const { return potential_; }

  FrontVolumes front() const;

  // O(n + m) recomputations used to audit the incremental bookkeeping.
  std::uint64_t potential_from_scratch() const;
  FrontVolumes front_from_scratch() const;
  // Throws std::logic_error if any maintained quantity disagrees with a
  // from-scratch recount.
  void audit_bookkeeping() const;

 private:
  DynamicsState() = default;
  void init_from_colors();

  const Graph* graph_ = nullptr;
  SignalAssignment signals_;
  std::vector<Color> colors_;
  std::vector<std::uint32_t> red_nbrs_;
  std::vector<std::uint32_t> blue_nbrs_;
  std::vector<Color> would_;
  std::vector<std::uint8_t> unstable_;
  std::uint64_t t_ = 0;
  std::uint64_t changes_ = 0;
  std::uint32_t red_count_ = 0;
  std::uint32_t blue_count_ = 0;
  std::uint32_t uncolored_count_ = 0;
  std::uint32_t unstable_count_ = 0;
  std::uint64_t red_volume_ = 0;
  std::uint64_t blue_volume_ = 0;
  std::uint64_t potential_ = 0;
  std::uint64_t vol_r_prime_ = 0;
  std::uint64_t vol_b_prime_ = 0;
  std::uint64_t vol_rp_in_b_ = 0;
  std::uint64_t vol_bp_in_r_ = 0;
};

FrontVolumes classify_front(const DynamicsState& state);

// One color change along a trajectory, with the crossing volumes of the
// front immediately before the change (what the coupled volume walk reads).
struct ChangeEvent {
  std::uint64_t t = 0;
  NodeId node = 0;
  Color from = Color::Uncolored;
  Color to = Color::Uncolored;
  std::uint64_t pre_vol_rp_in_b = 0;
  std::uint64_t pre_vol_bp_in_r = 0;
  std::uint64_t pre_red_volume = 0;
};

struct Checkpoint {
  std::uint64_t t = 0;
  std::uint64_t red_volume = 0;
  std::uint64_t blue_volume = 0;
  std::uint32_t uncolored = 0;
  std::uint64_t potential = 0;
  FrontVolumes front;
};

enum class TerminalClass : std::uint8_t {
  RedConsensus,
  BlueConsensus,
  NoConsensus,
};

struct Terminal {
  TerminalClass cls = TerminalClass::NoConsensus;
  std::uint32_t red_count = 0;
  std::uint64_t red_volume = 0;
  bool correct_majority_nodes = false;   // red on more than half the nodes
  bool correct_majority_volume = false;  // red volume exceeds |E|
};

struct RunOptions {
  std::uint64_t max_steps = 0;  // 0 means 10 (|V|^2 + 2 |V| |E|)
  std::vector<std::uint64_t> checkpoints;
  bool log_selections = false;
  bool log_changes = false;
  // Re-derive all bookkeeping from scratch at every checkpoint and fail
  // loudly on any mismatch.
  bool audit_checkpoints = false;
  bool record_final_colors = false;
};

struct TrajectoryRecord {
  bool stabilized = false;
  std::uint64_t steps = 0;          // selections consumed
  std::uint64_t color_changes = 0;
  std::optional<Terminal> terminal; // engaged only when stabilized
  NodeId first_selected = 0;        // valid when steps > 0
  std::vector<Checkpoint> checkpoints;
  std::vector<NodeId> selections;   // populated when log_selections
  std::vector<ChangeEvent> changes; // populated when log_changes
  std::vector<Color> final_colors;  // populated when record_final_colors
};

std::uint64_t default_max_steps(const Graph& g);

Terminal classify_terminal(const DynamicsState& state);

// Runs the asynchronous process under uniformly random selections until the
// state is stable or max_steps selections have been consumed.
TrajectoryRecord run(const Graph& g, SignalAssignment signals,
                     SplitMix64& rng, const RunOptions& opts = {});

// Replays a fixed selection sequence.
TrajectoryRecord run_sequence(const Graph& g, SignalAssignment signals,
                              std::span<const NodeId> sequence,
                              const RunOptions& opts = {});

// Influence set of v under a selection sequence: the nodes whose private
// signals can affect v's color after the whole sequence plays out.  Scans
// the sequence backward from v's last selection, absorbing any selected
// neighbor of the growing set.  Returns a sorted node list; empty when v
// is never selected.
std::vector<NodeId> influence_set(const Graph& g,
                                  std::span<const NodeId> sequence, NodeId v);

// Blocking pairs on a cycle: adjacent equal-signal pairs whose two members
// are both selected before either outside neighbor.  Such a pair keeps its
// signal color forever, and it forces its neighbors' eventual colors too.
// Requires the graph to be a single cycle (DomainError otherwise).
struct BlockingPair {
  NodeId a = 0;
  NodeId b = 0;
};

std::vector<BlockingPair> find_blocking_pairs(
    const Graph& cycle, const SignalAssignment& signals,
    std::span<const NodeId> sequence);

// Empirical distribution of the announced-red volume after exactly T
// selections, across independent trials.  Also reports the red volume with
// silent nodes credited their own signals, plus uncolored counts.
struct CheckpointRedVolumeReport {
  std::uint64_t horizon = 0;
  double threshold = 0.0;  // (1/2 + delta/2) |E|
  std::vector<std::uint64_t> announced_red_volume;
  std::vector<std::uint64_t> credited_red_volume;
  std::vector<std::uint32_t> uncolored;
  double fraction_announced_at_most_threshold = 0.0;
  double fraction_credited_at_most_threshold = 0.0;
  double mean_uncolored = 0.0;
};

CheckpointRedVolumeReport checkpoint_red_volume(std::uint32_t trials,
                                                const Graph& g, double delta,
                                                std::uint64_t horizon,
                                                std::uint64_t seed);

// State predicate behind the front-halving bound: whenever lambda is at
// most delta/6 and the announced-red volume is at least
// (1/2 + delta/4) Vol(V), the would-announce-blue volume is at most half
// the blue-or-nothing volume.
struct FrontHalvingCheck {
  bool hypothesis = false;
  bool holds = false;  // meaningful only when hypothesis is true
};

FrontHalvingCheck front_halving_check(const FrontVolumes& front,
                                      double lambda, double delta,
                                      std::uint64_t total_volume);

// Companion predicate: when Vol(B') <= Vol(B)/c for c > 1, the crossing
// volumes satisfy Vol(R' \cap B) >= (c-1) Vol(B' \cap R).
struct CrossingDominanceCheck {
  bool hypothesis = false;
  bool holds = false;
};

CrossingDominanceCheck crossing_dominance_check(const FrontVolumes& front,
                                                double c);

}  // namespace majority
