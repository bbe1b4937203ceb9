#include "majority/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "majority/dynamics.hpp"
#include "majority/errors.hpp"

namespace majority {
namespace {

constexpr double kResidualCap = 1e-12;

// Colorings are base-3 packed: digit v is 0 (red), 1 (blue), 2 (uncolored).
using StateKey = std::uint32_t;

StateKey pack(const std::vector<Color>& colors) {
  StateKey key = 0;
  for (std::size_t v = colors.size(); v-- > 0;) {
    key = key * 3 + static_cast<StateKey>(colors[v]);
  }
  return key;
}

void unpack(StateKey key, NodeId n, std::vector<Color>& colors) {
  colors.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    colors[v] = static_cast<Color>(key % 3);
    key /= 3;
  }
}

// The chain for one signal assignment: reachable colorings from the
// all-uncolored start, deterministic per-node successor states.
struct Chain {
  std::vector<StateKey> states;                  // sorted
  std::vector<std::vector<StateKey>> successors; // successor key per node
  std::vector<std::uint8_t> absorbing;
  std::size_t start_index = 0;

  std::size_t index_of(StateKey key) const {
    const auto it = std::lower_bound(states.begin(), states.end(), key);
    return static_cast<std::size_t>(it - states.begin());
  }
};

StateKey successor(const Graph& g, const std::vector<Color>& colors,
                   StateKey key, NodeId v, const std::vector<Color>& signals) {
  std::uint32_t nr = 0;
  std::uint32_t nb = 0;
  for (const NodeId u : g.neighbors(v)) {
    if (colors[u] == Color::Red) ++nr;
    if (colors[u] == Color::Blue) ++nb;
  }
  const Color next = announce_rule(nr, nb, signals[v]);
  if (next == colors[v]) return key;
  static const std::int64_t pow3[] = {1,   3,   9,    27,  81,
                                      243, 729, 2187, 6561};
  const std::int64_t delta = static_cast<std::int64_t>(next) -
                             static_cast<std::int64_t>(colors[v]);
  return static_cast<StateKey>(static_cast<std::int64_t>(key) +
                               delta * pow3[v]);
}

Chain build_chain(const Graph& g, const std::vector<Color>& signals) {
  const NodeId n = g.node_count();
  std::vector<Color> colors(n, Color::Uncolored);
  const StateKey start = pack(colors);

  std::vector<StateKey> frontier{start};
  std::vector<StateKey> states{start};
  std::unordered_map<StateKey, std::uint8_t> seen{{start, 1}};
  std::vector<Color> scratch;

  while (!frontier.empty()) {
    std::vector<StateKey> next_frontier;
    for (const StateKey key : frontier) {
      unpack(key, n, scratch);
      for (NodeId v = 0; v < n; ++v) {
        const StateKey succ = successor(g, scratch, key, v, signals);
        if (seen.emplace(succ, 1).second) {
          states.push_back(succ);
          next_frontier.push_back(succ);
        }
      }
    }
    frontier = std::move(next_frontier);
  }

  std::sort(states.begin(), states.end());

  Chain chain;
  chain.states = std::move(states);
  chain.start_index = chain.index_of(start);
  chain.successors.resize(chain.states.size());
  chain.absorbing.resize(chain.states.size());
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    const StateKey key = chain.states[i];
    unpack(key, n, scratch);
    auto& succ = chain.successors[i];
    succ.resize(n);
    bool stable = true;
    for (NodeId v = 0; v < n; ++v) {
      succ[v] = successor(g, scratch, key, v, signals);
      if (succ[v] != key) stable = false;
    }
    chain.absorbing[i] = stable ? 1 : 0;
  }
  return chain;
}

// Gaussian elimination with partial pivoting on A, solving A X = B for
// several right-hand sides in place.
void solve_dense(std::vector<double>& a, std::vector<std::vector<double>>& b,
                 std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::fabs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::fabs(a[r * n + col]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best == 0.0) {
      throw std::runtime_error("exact chain solve hit a singular matrix");
    }
    if (pivot != col) {
      for (std::size_t c = col; c < n; ++c) {
        std::swap(a[col * n + c], a[pivot * n + c]);
      }
      for (auto& rhs : b) std::swap(rhs[col], rhs[pivot]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] * inv;
      if (factor == 0.0) continue;
      a[r * n + col] = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) {
        a[r * n + c] -= factor * a[col * n + c];
      }
      for (auto& rhs : b) rhs[r] -= factor * rhs[col];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    const double inv = 1.0 / a[col * n + col];
    for (auto& rhs : b) {
      double acc = rhs[col];
      for (std::size_t c = col + 1; c < n; ++c) {
        acc -= a[col * n + c] * rhs[c];
      }
      rhs[col] = acc * inv;
    }
  }
}

struct SolveResult {
  std::vector<std::vector<double>> x;  // per RHS, indexed by transient index
  double residual = 0.0;
  bool iterative = false;
};

// Solves (I - Q) x = b on the transient block, where Q holds the
// transient-to-transient selection probabilities (uniform over nodes,
// self-loops included).
SolveResult solve_transient(const Chain& chain, NodeId n,
                            const std::vector<std::size_t>& transient,
                            const std::vector<std::size_t>& transient_index,
                            const std::vector<std::vector<double>>& rhs) {
  const std::size_t tn = transient.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  // Sparse rows of Q: (transient column, probability).
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(tn);
  for (std::size_t ti = 0; ti < tn; ++ti) {
    std::unordered_map<std::size_t, double> acc;
    const std::size_t si = transient[ti];
    for (NodeId v = 0; v < n; ++v) {
      const std::size_t succ = chain.index_of(chain.successors[si][v]);
      if (!chain.absorbing[succ]) {
        acc[transient_index[succ]] += inv_n;
      }
    }
    rows[ti].assign(acc.begin(), acc.end());
    std::sort(rows[ti].begin(), rows[ti].end());
  }

  SolveResult result;
  if (tn <= kDenseTransientCap) {
    std::vector<double> a(tn * tn, 0.0);
    for (std::size_t i = 0; i < tn; ++i) {
      a[i * tn + i] = 1.0;
      for (const auto& [j, p] : rows[i]) a[i * tn + j] -= p;
    }
    result.x = rhs;
    solve_dense(a, result.x, tn);
  } else {
    result.iterative = true;
    result.x.assign(rhs.size(), std::vector<double>(tn, 0.0));
    constexpr std::uint64_t kMaxSweeps = 20000000;
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      auto& x = result.x[k];
      std::vector<double> next(tn, 0.0);
      double residual = 0.0;
      std::uint64_t sweep = 0;
      for (; sweep < kMaxSweeps; ++sweep) {
        residual = 0.0;
        for (std::size_t i = 0; i < tn; ++i) {
          double acc = rhs[k][i];
          for (const auto& [j, p] : rows[i]) acc += p * x[j];
          next[i] = acc;
          residual = std::max(residual, std::fabs(acc - x[i]));
        }
        x.swap(next);
        if (residual <= kResidualCap / 10.0) break;
      }
      if (sweep == kMaxSweeps) {
        throw std::runtime_error(
            "iterative chain solve failed to reach the residual cap");
      }
    }
  }

  // Residual check of (I - Q) x = b for every right-hand side.
  double worst = 0.0;
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    const auto& x = result.x[k];
    for (std::size_t i = 0; i < tn; ++i) {
      double acc = x[i];
      for (const auto& [j, p] : rows[i]) acc -= p * x[j];
      worst = std::max(worst, std::fabs(acc - rhs[k][i]));
    }
  }
  result.residual = worst;
  if (worst > kResidualCap) {
    throw std::runtime_error("chain solve residual " + std::to_string(worst) +
                             " exceeds 1e-12");
  }
  return result;
}

void check_delta_oracle(double delta) {
  if (!(delta > 0.0) || delta > 0.5) {
    throw ParameterError("signal bias delta must lie in (0, 1/2]");
  }
}

}  // namespace

OutcomeDistribution exact_distribution(const Graph& g, double delta) {
  check_delta_oracle(delta);
  const NodeId n = g.node_count();
  if (n == 0) throw ParameterError("exact_distribution: empty graph");
  if (n > kExactDistributionCap) {
    throw SizeError("exact_distribution: n = " + std::to_string(n) +
                    " exceeds the cap of " +
                    std::to_string(kExactDistributionCap));
  }

  OutcomeDistribution out;
  const double p_red = 0.5 + delta;
  std::vector<Color> signals(n);
  std::vector<Color> scratch;

  double total_weight = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double weight = 1.0;
    for (NodeId v = 0; v < n; ++v) {
      const bool red = (mask >> v) & 1u;
      signals[v] = red ? Color::Red : Color::Blue;
      weight *= red ? p_red : 1.0 - p_red;
    }
    total_weight += weight;

    const Chain chain = build_chain(g, signals);
    const std::size_t total = chain.states.size();

    std::vector<std::size_t> transient;
    std::vector<std::size_t> transient_index(total, ~std::size_t{0});
    for (std::size_t i = 0; i < total; ++i) {
      if (!chain.absorbing[i]) {
        transient_index[i] = transient.size();
        transient.push_back(i);
      }
    }
    out.max_transient = std::max(out.max_transient, transient.size());

    // Absorbing-state rewards per event.
    auto absorb_reward = [&](std::size_t si, int event) {
      unpack(chain.states[si], n, scratch);
      std::uint32_t reds = 0;
      std::uint32_t blues = 0;
      for (const Color c : scratch) {
        if (c == Color::Red) ++reds;
        if (c == Color::Blue) ++blues;
      }
      switch (event) {
        case 0:
          return reds == n ? 1.0 : 0.0;
        case 1:
          return blues == n ? 1.0 : 0.0;
        case 2:
          return reds != n && blues != n ? 1.0 : 0.0;
        default:
          return 2 * reds > n ? 1.0 : 0.0;
      }
    };

    if (chain.absorbing[chain.start_index]) {
      // Cannot happen: every node of the all-uncolored start is unstable.
      throw std::logic_error("start state of the chain is absorbing");
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<std::vector<double>> rhs(
        5, std::vector<double>(transient.size(), 0.0));
    for (std::size_t ti = 0; ti < transient.size(); ++ti) {
      const std::size_t si = transient[ti];
      for (NodeId v = 0; v < n; ++v) {
        const StateKey succ_key = chain.successors[si][v];
        const std::size_t succ = chain.index_of(succ_key);
        if (chain.absorbing[succ]) {
          for (int e = 0; e < 4; ++e) {
            rhs[e][ti] += inv_n * absorb_reward(succ, e);
          }
        }
        if (succ_key != chain.states[si]) {
          rhs[4][ti] += inv_n;  // expected color changes accumulate per move
        }
      }
    }

    const SolveResult solved =
        solve_transient(chain, n, transient, transient_index, rhs);
    out.max_residual = std::max(out.max_residual, solved.residual);
    out.used_iterative = out.used_iterative || solved.iterative;

    const std::size_t s0 = transient_index[chain.start_index];
    out.p_red_consensus += weight * solved.x[0][s0];
    out.p_blue_consensus += weight * solved.x[1][s0];
    out.p_no_consensus += weight * solved.x[2][s0];
    out.p_correct_majority_nodes += weight * solved.x[3][s0];
    out.mean_color_changes += weight * solved.x[4][s0];
  }

  if (std::fabs(total_weight - 1.0) > 1e-12) {
    throw std::logic_error("signal weights do not sum to 1");
  }
  const double mass =
      out.p_red_consensus + out.p_blue_consensus + out.p_no_consensus;
  if (std::fabs(mass - 1.0) > 1e-9) {
    throw std::logic_error("absorption probabilities do not sum to 1");
  }
  out.p_consensus = out.p_red_consensus + out.p_blue_consensus;
  return out;
}

ExactRedVolume exact_expected_red_volume(const Graph& g, double delta,
                                         std::uint64_t horizon) {
  check_delta_oracle(delta);
  const NodeId n = g.node_count();
  if (n == 0) throw ParameterError("exact_expected_red_volume: empty graph");
  if (n > kExactExpectationCap) {
    throw SizeError("exact_expected_red_volume: n = " + std::to_string(n) +
                    " exceeds the cap of " +
                    std::to_string(kExactExpectationCap));
  }
  if (horizon > kExactExpectationHorizonCap) {
    throw SizeError("exact_expected_red_volume: horizon " +
                    std::to_string(horizon) + " exceeds the cap of " +
                    std::to_string(kExactExpectationHorizonCap));
  }

  ExactRedVolume out;
  const double p_red = 0.5 + delta;
  std::vector<Color> signals(n);
  std::vector<Color> scratch;

  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double weight = 1.0;
    for (NodeId v = 0; v < n; ++v) {
      const bool red = (mask >> v) & 1u;
      signals[v] = red ? Color::Red : Color::Blue;
      weight *= red ? p_red : 1.0 - p_red;
    }

    const Chain chain = build_chain(g, signals);
    const std::size_t total = chain.states.size();
    const double inv_n = 1.0 / static_cast<double>(n);

    // Evolve the distribution over reachable colorings for `horizon`
    // uniform selections.
    std::vector<double> dist(total, 0.0);
    dist[chain.start_index] = 1.0;
    std::vector<double> next(total, 0.0);
    for (std::uint64_t t = 0; t < horizon; ++t) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t i = 0; i < total; ++i) {
        const double p = dist[i];
        if (p == 0.0) continue;
        for (NodeId v = 0; v < n; ++v) {
          next[chain.index_of(chain.successors[i][v])] += p * inv_n;
        }
      }
      dist.swap(next);
    }

    double announced = 0.0;
    double credited = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      if (dist[i] == 0.0) continue;
      unpack(chain.states[i], n, scratch);
      std::uint64_t vol_announced = 0;
      std::uint64_t vol_credit = 0;
      for (NodeId v = 0; v < n; ++v) {
        if (scratch[v] == Color::Red) {
          vol_announced += g.degree(v);
        } else if (scratch[v] == Color::Uncolored &&
                   signals[v] == Color::Red) {
          vol_credit += g.degree(v);
        }
      }
      announced += dist[i] * static_cast<double>(vol_announced);
      credited += dist[i] * static_cast<double>(vol_announced + vol_credit);
    }
    out.announced += weight * announced;
    out.credited += weight * credited;
  }

  // With silent nodes credited their own signal, each node's credited
  // color is a monotone odd function of the signals, so its red
  // probability is at least 1/2 + delta and the expectation never drops
  // below (1/2 + delta)|E|.  Falling below means the engine is broken.
  const double floor =
      (0.5 + delta) * static_cast<double>(g.edge_count());
  if (out.credited < floor - 1e-9) {
    throw ContractError("exact expected red volume " +
                        std::to_string(out.credited) +
                        " fell below the guaranteed floor " +
                        std::to_string(floor));
  }
  return out;
}

}  // namespace majority
