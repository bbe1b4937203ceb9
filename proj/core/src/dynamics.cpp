#include "majority/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "majority/errors.hpp"

namespace majority {
namespace {

// 1 for an uncolored node or one announcing against its signal.
std::uint64_t f_term(Color c, Color signal) {
  if (c == Color::Uncolored) return 1;
  return c == signal ? 0 : 1;
}

// 2 for an edge with an uncolored endpoint or disagreeing endpoints.
std::uint64_t g_term(Color a, Color b) {
  if (a == Color::Uncolored || b == Color::Uncolored || a != b) return 2;
  return 0;
}

void check_delta(double delta) {
  if (!(delta > 0.0) || delta > 0.5) {
    throw ParameterError("signal bias delta must lie in (0, 1/2]");
  }
}

}  // namespace

char color_char(Color c) {
  switch (c) {
    case Color::Red:
      return 'R';
    case Color::Blue:
      return 'B';
    case Color::Uncolored:
      return 'U';
  }
  return '?';
}

Color announce_rule(std::uint32_t red_neighbors, std::uint32_t blue_neighbors,
                    Color signal) {
  if (red_neighbors > blue_neighbors) return Color::Red;
  if (blue_neighbors > red_neighbors) return Color::Blue;
  return signal;
}

SignalAssignment SignalAssignment::sample(NodeId n, double delta,
                                          SplitMix64& rng) {
  check_delta(delta);
  SignalAssignment s;
  s.delta = delta;
  s.signals.resize(n);
  const double p_red = 0.5 + delta;
  for (NodeId v = 0; v < n; ++v) {
    s.signals[v] = rng.bernoulli(p_red) ? Color::Red : Color::Blue;
  }
  return s;
}

SignalAssignment SignalAssignment::fixed(std::vector<Color> signals,
                                         double delta) {
  check_delta(delta);
  for (const Color c : signals) {
    if (c == Color::Uncolored) {
      throw ParameterError("signals must be Red or Blue");
    }
  }
  SignalAssignment s;
  s.delta = delta;
  s.signals = std::move(signals);
  return s;
}

DynamicsState::DynamicsState(const Graph& g, SignalAssignment signals)
    : graph_(&g), signals_(std::move(signals)) {
  if (signals_.signals.size() != g.node_count()) {
    throw ParameterError("signal count does not match node count");
  }
  colors_.assign(g.node_count(), Color::Uncolored);
  init_from_colors();
}

DynamicsState DynamicsState::from_coloring(const Graph& g,
                                           SignalAssignment signals,
                                           const std::vector<Color>& colors) {
  if (signals.signals.size() != g.node_count() ||
      colors.size() != g.node_count()) {
    throw ParameterError("signal/color count does not match node count");
  }
  DynamicsState s;
  s.graph_ = &g;
  s.signals_ = std::move(signals);
  s.colors_ = colors;
  s.init_from_colors();
  return s;
}

void DynamicsState::init_from_colors() {
  const Graph& g = *graph_;
  const NodeId n = g.node_count();

  red_nbrs_.assign(n, 0);
  blue_nbrs_.assign(n, 0);
  would_.assign(n, Color::Uncolored);
  unstable_.assign(n, 0);
  red_count_ = blue_count_ = uncolored_count_ = 0;
  unstable_count_ = 0;
  red_volume_ = blue_volume_ = 0;
  vol_r_prime_ = vol_b_prime_ = 0;
  vol_rp_in_b_ = vol_bp_in_r_ = 0;

  for (NodeId v = 0; v < n; ++v) {
    for (const NodeId u : g.neighbors(v)) {
      if (colors_[u] == Color::Red) ++red_nbrs_[v];
      if (colors_[u] == Color::Blue) ++blue_nbrs_[v];
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    const std::uint32_t d = g.degree(v);
    switch (colors_[v]) {
      case Color::Red:
        ++red_count_;
        red_volume_ += d;
        break;
      case Color::Blue:
        ++blue_count_;
        blue_volume_ += d;
        break;
      case Color::Uncolored:
        ++uncolored_count_;
        break;
    }
    would_[v] = announce_rule(red_nbrs_[v], blue_nbrs_[v],
                              signals_.signals[v]);
    unstable_[v] = would_[v] != colors_[v] ? 1 : 0;
    unstable_count_ += unstable_[v];
    if (would_[v] == Color::Red) {
      vol_r_prime_ += d;
      if (colors_[v] != Color::Red) vol_rp_in_b_ += d;
    } else {
      vol_b_prime_ += d;
      if (colors_[v] == Color::Red) vol_bp_in_r_ += d;
    }
  }
  potential_ = potential_from_scratch();
}

bool DynamicsState::step(NodeId v) {
  const Graph& g = *graph_;
  if (v >= g.node_count()) throw ParameterError("step: node out of range");
  ++t_;

  const Color from = colors_[v];
  const Color to = would_[v];
  if (to == from) return false;

  // Potential delta for this change; must be <= -1.
  std::int64_t dh = static_cast<std::int64_t>(f_term(to, signals_.signals[v])) -
                    static_cast<std::int64_t>(f_term(from, signals_.signals[v]));
  for (const NodeId u : g.neighbors(v)) {
    dh += static_cast<std::int64_t>(g_term(to, colors_[u])) -
          static_cast<std::int64_t>(g_term(from, colors_[u]));
  }
  if (dh >= 0) {
    throw std::logic_error(
        "potential did not decrease on a color change (node " +
        std::to_string(v) + ", delta " + std::to_string(dh) + ")");
  }
  potential_ = static_cast<std::uint64_t>(
      static_cast<std::int64_t>(potential_) + dh);

  const std::uint32_t dv = g.degree(v);

  // v leaves its old announcement class.
  switch (from) {
    case Color::Red:
      --red_count_;
      red_volume_ -= dv;
      break;
    case Color::Blue:
      --blue_count_;
      blue_volume_ -= dv;
      break;
    case Color::Uncolored:
      --uncolored_count_;
      break;
  }
  switch (to) {
    case Color::Red:
      ++red_count_;
      red_volume_ += dv;
      break;
    case Color::Blue:
      ++blue_count_;
      blue_volume_ += dv;
      break;
    case Color::Uncolored:
      break;
  }

  // v's crossing-volume membership: before the change it sat in R' \cap B
  // or B' \cap R; afterward its announcement matches its color.
  if (to == Color::Red) {
    vol_rp_in_b_ -= dv;
  } else if (from == Color::Red) {
    vol_bp_in_r_ -= dv;
  }

  unstable_[v] = 0;
  --unstable_count_;
  colors_[v] = to;

  for (const NodeId u : g.neighbors(v)) {
    if (from == Color::Red) --red_nbrs_[u];
    if (from == Color::Blue) --blue_nbrs_[u];
    if (to == Color::Red) ++red_nbrs_[u];
    if (to == Color::Blue) ++blue_nbrs_[u];

    const Color wb_old = would_[u];
    const Color wb_new =
        announce_rule(red_nbrs_[u], blue_nbrs_[u], signals_.signals[u]);
    if (wb_new != wb_old) {
      const std::uint32_t du = g.degree(u);
      if (wb_old == Color::Red) {
        vol_r_prime_ -= du;
        if (colors_[u] != Color::Red) vol_rp_in_b_ -= du;
      } else {
        vol_b_prime_ -= du;
        if (colors_[u] == Color::Red) vol_bp_in_r_ -= du;
      }
      if (wb_new == Color::Red) {
        vol_r_prime_ += du;
        if (colors_[u] != Color::Red) vol_rp_in_b_ += du;
      } else {
        vol_b_prime_ += du;
        if (colors_[u] == Color::Red) vol_bp_in_r_ += du;
      }
      would_[u] = wb_new;
    }
    const std::uint8_t unstable_now = wb_new != colors_[u] ? 1 : 0;
    if (unstable_now != unstable_[u]) {
      unstable_count_ += unstable_now ? 1 : -1;
      unstable_[u] = unstable_now;
    }
  }

  ++changes_;
  const std::uint64_t cap =
      g.node_count() + 2 * g.edge_count();
  if (changes_ > cap) {
    throw std::logic_error("color changes exceeded |V| + 2|E|");
  }
  return true;
}

std::uint64_t DynamicsState::credited_red_volume() const {
  const Graph& g = *graph_;
  std::uint64_t vol = red_volume_;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (colors_[v] == Color::Uncolored &&
        signals_.signals[v] == Color::Red) {
      vol += g.degree(v);
    }
  }
  return vol;
}

FrontVolumes DynamicsState::front() const {
  FrontVolumes f;
  f.vol_r = red_volume_;
  f.vol_b = graph_->total_volume() - red_volume_;
  f.vol_r_prime = vol_r_prime_;
  f.vol_b_prime = vol_b_prime_;
  f.vol_rp_in_b = vol_rp_in_b_;
  f.vol_bp_in_r = vol_bp_in_r_;
  f.count_r = red_count_;
  f.count_b = graph_->node_count() - red_count_;
  return f;
}

std::uint64_t DynamicsState::potential_from_scratch() const {
  const Graph& g = *graph_;
  std::uint64_t h = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    h += f_term(colors_[v], signals_.signals[v]);
    for (const NodeId u : g.neighbors(v)) {
      if (v < u) h += g_term(colors_[v], colors_[u]);
    }
  }
  return h;
}

FrontVolumes DynamicsState::front_from_scratch() const {
  const Graph& g = *graph_;
  FrontVolumes f;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::uint32_t nr = 0;
    std::uint32_t nb = 0;
    for (const NodeId u : g.neighbors(v)) {
      if (colors_[u] == Color::Red) ++nr;
      if (colors_[u] == Color::Blue) ++nb;
    }
    const Color wb = announce_rule(nr, nb, signals_.signals[v]);
    const std::uint32_t d = g.degree(v);
    const bool announced_red = colors_[v] == Color::Red;
    if (announced_red) {
      f.vol_r += d;
      ++f.count_r;
    } else {
      f.vol_b += d;
      ++f.count_b;
    }
    if (wb == Color::Red) {
      f.vol_r_prime += d;
      if (!announced_red) f.vol_rp_in_b += d;
    } else {
      f.vol_b_prime += d;
      if (announced_red) f.vol_bp_in_r += d;
    }
  }
  return f;
}

void DynamicsState::audit_bookkeeping() const {
  const Graph& g = *graph_;
  const FrontVolumes a = front();
  const FrontVolumes b = front_from_scratch();
  const bool front_ok =
      a.vol_r == b.vol_r && a.vol_b == b.vol_b &&
      a.vol_r_prime == b.vol_r_prime && a.vol_b_prime == b.vol_b_prime &&
      a.vol_rp_in_b == b.vol_rp_in_b && a.vol_bp_in_r == b.vol_bp_in_r &&
      a.count_r == b.count_r && a.count_b == b.count_b;
  if (!front_ok) {
    throw std::logic_error("front bookkeeping diverged from recount");
  }
  if (potential_ != potential_from_scratch()) {
    throw std::logic_error("potential bookkeeping diverged from recount");
  }

  std::uint32_t unstable = 0;
  std::uint32_t uncolored = 0;
  std::uint64_t blue_vol = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::uint32_t nr = 0;
    std::uint32_t nb = 0;
    for (const NodeId u : g.neighbors(v)) {
      if (colors_[u] == Color::Red) ++nr;
      if (colors_[u] == Color::Blue) ++nb;
    }
    if (nr != red_nbrs_[v] || nb != blue_nbrs_[v]) {
      throw std::logic_error("neighbor-count bookkeeping diverged");
    }
    const Color wb = announce_rule(nr, nb, signals_.signals[v]);
    if (wb != would_[v]) {
      throw std::logic_error("would-announce bookkeeping diverged");
    }
    if ((wb != colors_[v]) != (unstable_[v] != 0)) {
      throw std::logic_error("instability flag diverged");
    }
    unstable += wb != colors_[v] ? 1 : 0;
    if (colors_[v] == Color::Uncolored) ++uncolored;
    if (colors_[v] == Color::Blue) blue_vol += g.degree(v);
  }
  if (unstable != unstable_count_ || uncolored != uncolored_count_ ||
      blue_vol != blue_volume_) {
    throw std::logic_error("count bookkeeping diverged from recount");
  }
}

FrontVolumes classify_front(const DynamicsState& state) {
  return state.front();
}

std::uint64_t default_max_steps(const Graph& g) {
  const std::uint64_t n = g.node_count();
  const std::uint64_t m = g.edge_count();
  return 10 * (n * n + 2 * n * m);
}

Terminal classify_terminal(const DynamicsState& state) {
  const Graph& g = state.graph();
  Terminal t;
  t.red_count = state.red_count();
  t.red_volume = state.red_volume();
  if (state.red_count() == g.node_count()) {
    t.cls = TerminalClass::RedConsensus;
  } else if (state.blue_count() == g.node_count()) {
    t.cls = TerminalClass::BlueConsensus;
  } else {
    t.cls = TerminalClass::NoConsensus;
  }
  t.correct_majority_nodes =
      2 * static_cast<std::uint64_t>(state.red_count()) > g.node_count();
  t.correct_majority_volume = state.red_volume() > g.edge_count();
  return t;
}

namespace {

template <typename SelectFn>
TrajectoryRecord run_loop(const Graph& g, SignalAssignment signals,
                          const RunOptions& opts, std::uint64_t budget,
                          bool stop_when_stable, SelectFn&& select) {
  DynamicsState state(g, std::move(signals));
  TrajectoryRecord rec;

  std::vector<std::uint64_t> cps = opts.checkpoints;
  std::sort(cps.begin(), cps.end());
  std::size_t cp = 0;

  auto emit = [&](std::uint64_t label) {
    if (opts.audit_checkpoints) state.audit_bookkeeping();
    Checkpoint c;
    c.t = label;
    c.red_volume = state.red_volume();
    c.blue_volume = state.blue_volume();
    c.uncolored = state.uncolored_count();
    c.potential = state.potential();
    c.front = state.front();
    rec.checkpoints.push_back(c);
  };

  while (cp < cps.size() && cps[cp] == 0) {
    emit(0);
    ++cp;
  }

  bool first = true;
  while (state.time() < budget && !(stop_when_stable && state.stable())) {
    const NodeId v = select(state.time());
    if (first) {
      rec.first_selected = v;
      first = false;
    }
    if (opts.log_selections) rec.selections.push_back(v);

    ChangeEvent ev;
    if (opts.log_changes) {
      ev.pre_vol_rp_in_b = state.front().vol_rp_in_b;
      ev.pre_vol_bp_in_r = state.front().vol_bp_in_r;
      ev.pre_red_volume = state.red_volume();
      ev.from = state.color(v);
    }
    const bool changed = state.step(v);
    if (changed && opts.log_changes) {
      ev.t = state.time();
      ev.node = v;
      ev.to = state.color(v);
      rec.changes.push_back(ev);
    }
    while (cp < cps.size() && cps[cp] == state.time()) {
      emit(cps[cp]);
      ++cp;
    }
  }

  rec.steps = state.time();
  rec.color_changes = state.color_change_count();
  rec.stabilized = state.stable();
  if (rec.stabilized) {
    rec.terminal = classify_terminal(state);
    // The stable state is absorbing, so it stands in for any later time.
    for (; cp < cps.size(); ++cp) emit(cps[cp]);
  }
  if (opts.record_final_colors) rec.final_colors = state.colors();
  return rec;
}

}  // namespace

TrajectoryRecord run(const Graph& g, SignalAssignment signals,
                     SplitMix64& rng, const RunOptions& opts) {
  const NodeId n = g.node_count();
  if (n == 0) throw ParameterError("run requires a nonempty graph");
  const std::uint64_t budget =
      opts.max_steps > 0 ? opts.max_steps : default_max_steps(g);
  return run_loop(g, std::move(signals), opts, budget, true,
                  [&](std::uint64_t) {
                    return static_cast<NodeId>(rng.bounded(n));
                  });
}

TrajectoryRecord run_sequence(const Graph& g, SignalAssignment signals,
                              std::span<const NodeId> sequence,
                              const RunOptions& opts) {
  for (const NodeId v : sequence) {
    if (v >= g.node_count()) {
      throw ParameterError("run_sequence: selection out of range");
    }
  }
  return run_loop(g, std::move(signals), opts, sequence.size(), false,
                  [&](std::uint64_t t) { return sequence[t]; });
}

std::vector<NodeId> influence_set(const Graph& g,
                                  std::span<const NodeId> sequence,
                                  NodeId v) {
  if (v >= g.node_count()) {
    throw ParameterError("influence_set: node out of range");
  }
  for (const NodeId u : sequence) {
    if (u >= g.node_count()) {
      throw ParameterError("influence_set: selection out of range");
    }
  }

  std::vector<std::uint8_t> in_set(g.node_count(), 0);
  std::size_t last = sequence.size();
  while (last > 0 && sequence[last - 1] != v) --last;
  if (last == 0) return {};  // v never selected: its color stays uncolored

  in_set[v] = 1;
  // Walk backward from v's last selection; any selected node adjacent to
  // the current set joins it.
  for (std::size_t i = last - 1; i-- > 0;) {
    const NodeId u = sequence[i];
    if (in_set[u]) continue;
    bool touches = false;
    for (const NodeId w : g.neighbors(u)) {
      if (in_set[w]) {
        touches = true;
        break;
      }
    }
    if (touches) in_set[u] = 1;
  }

  std::vector<NodeId> out;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (in_set[u]) out.push_back(u);
  }
  return out;
}

std::vector<BlockingPair> find_blocking_pairs(
    const Graph& cycle, const SignalAssignment& signals,
    std::span<const NodeId> sequence) {
  const NodeId n = cycle.node_count();
  if (n < 3 || cycle.edge_count() != n || !cycle.connected()) {
    throw DomainError("find_blocking_pairs requires a single cycle");
  }
  for (NodeId v = 0; v < n; ++v) {
    if (cycle.degree(v) != 2) {
      throw DomainError("find_blocking_pairs requires a single cycle");
    }
  }
  if (signals.signals.size() != n) {
    throw ParameterError("signal count does not match node count");
  }

  constexpr std::uint64_t kNever = ~0ULL;
  std::vector<std::uint64_t> first(n, kNever);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const NodeId u = sequence[i];
    if (u >= n) throw ParameterError("find_blocking_pairs: bad selection");
    if (first[u] == kNever) first[u] = i;
  }

  auto other_neighbor = [&](NodeId a, NodeId not_this) {
    const auto nb = cycle.neighbors(a);
    return nb[0] == not_this ? nb[1] : nb[0];
  };

  std::vector<BlockingPair> out;
  for (const auto& [a, b] : cycle.edges()) {
    if (signals.signals[a] != signals.signals[b]) continue;
    if (first[a] == kNever || first[b] == kNever) continue;
    const NodeId ao = other_neighbor(a, b);
    const NodeId bo = other_neighbor(b, a);
    const std::uint64_t inner = std::max(first[a], first[b]);
    const std::uint64_t outer = std::min(first[ao], first[bo]);
    if (inner < outer) out.push_back({a, b});
  }
  return out;
}

CheckpointRedVolumeReport checkpoint_red_volume(std::uint32_t trials,
                                                const Graph& g, double delta,
                                                std::uint64_t horizon,
                                                std::uint64_t seed) {
  if (trials == 0) throw ParameterError("checkpoint_red_volume: trials >= 1");
  check_delta(delta);
  const NodeId n = g.node_count();
  if (n == 0) throw ParameterError("checkpoint_red_volume: empty graph");

  CheckpointRedVolumeReport rep;
  rep.horizon = horizon;
  rep.threshold = (0.5 + delta / 2.0) * static_cast<double>(g.edge_count());
  rep.announced_red_volume.reserve(trials);
  rep.credited_red_volume.reserve(trials);
  rep.uncolored.reserve(trials);

  std::uint64_t announced_below = 0;
  std::uint64_t credited_below = 0;
  double uncolored_sum = 0.0;

  for (std::uint32_t i = 0; i < trials; ++i) {
    SplitMix64 rng(derive_stream(seed, i));
    SignalAssignment sig = SignalAssignment::sample(n, delta, rng);
    DynamicsState state(g, std::move(sig));
    for (std::uint64_t t = 0; t < horizon && !state.stable(); ++t) {
      state.step(static_cast<NodeId>(rng.bounded(n)));
    }
    const std::uint64_t announced = state.red_volume();
    const std::uint64_t credited = state.credited_red_volume();
    rep.announced_red_volume.push_back(announced);
    rep.credited_red_volume.push_back(credited);
    rep.uncolored.push_back(state.uncolored_count());
    uncolored_sum += state.uncolored_count();
    if (static_cast<double>(announced) <= rep.threshold) ++announced_below;
    if (static_cast<double>(credited) <= rep.threshold) ++credited_below;
  }

  rep.fraction_announced_at_most_threshold =
      static_cast<double>(announced_below) / trials;
  rep.fraction_credited_at_most_threshold =
      static_cast<double>(credited_below) / trials;
  rep.mean_uncolored = uncolored_sum / trials;
  return rep;
}

FrontHalvingCheck front_halving_check(const FrontVolumes& front,
                                      double lambda, double delta,
                                      std::uint64_t total_volume) {
  check_delta(delta);
  FrontHalvingCheck c;
  c.hypothesis =
      lambda <= delta / 6.0 + 1e-12 &&
      static_cast<double>(front.vol_r) >=
          (0.5 + delta / 4.0) * static_cast<double>(total_volume) - 1e-9;
  c.holds = 2 * front.vol_b_prime <= front.vol_b;
  return c;
}

CrossingDominanceCheck crossing_dominance_check(const FrontVolumes& front,
                                                double c) {
  if (!(c > 1.0)) {
    throw ParameterError("crossing_dominance_check requires c > 1");
  }
  CrossingDominanceCheck out;
  out.hypothesis = static_cast<double>(front.vol_b_prime) <=
                   static_cast<double>(front.vol_b) / c + 1e-9;
  out.holds = static_cast<double>(front.vol_rp_in_b) >=
              (c - 1.0) * static_cast<double>(front.vol_bp_in_r) - 1e-9;
  return out;
}

}  // namespace majority
