#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "majority/dynamics.hpp"
#include "majority/errors.hpp"
#include "majority/generators.hpp"
#include "majority/graph.hpp"
#include "majority/oracle.hpp"
#include "majority/rng.hpp"

using namespace majority;

namespace {

// Independent expectation by full enumeration: every signal assignment
// (2^n, weighted by the signal bias) crossed with every selection sequence
// (n^T, uniform), colors evolved by a local reimplementation of the rule.
ExactRedVolume brute_force_red_volume(const Graph& g, double delta,
                                      std::uint64_t horizon) {
  const NodeId n = g.node_count();
  std::uint64_t sequences = 1;
  for (std::uint64_t t = 0; t < horizon; ++t) sequences *= n;

  ExactRedVolume out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double weight = 1.0;
    std::vector<Color> signals(n);
    for (NodeId v = 0; v < n; ++v) {
      const bool red = (mask >> v) & 1u;
      signals[v] = red ? Color::Red : Color::Blue;
      weight *= red ? 0.5 + delta : 0.5 - delta;
    }
    double announced_sum = 0.0;
    double credited_sum = 0.0;
    for (std::uint64_t code = 0; code < sequences; ++code) {
      std::vector<Color> colors(n, Color::Uncolored);
      std::uint64_t rest = code;
      for (std::uint64_t t = 0; t < horizon; ++t) {
        const NodeId v = static_cast<NodeId>(rest % n);
        rest /= n;
        std::uint32_t red = 0;
        std::uint32_t blue = 0;
        for (const NodeId w : g.neighbors(v)) {
          if (colors[w] == Color::Red) ++red;
          if (colors[w] == Color::Blue) ++blue;
        }
        colors[v] = red > blue    ? Color::Red
                    : blue > red ? Color::Blue
                                 : signals[v];
      }
      for (NodeId v = 0; v < n; ++v) {
        const double d = static_cast<double>(g.degree(v));
        if (colors[v] == Color::Red) {
          announced_sum += d;
          credited_sum += d;
        } else if (colors[v] == Color::Uncolored &&
                   signals[v] == Color::Red) {
          credited_sum += d;
        }
      }
    }
    out.announced += weight * announced_sum / static_cast<double>(sequences);
    out.credited += weight * credited_sum / static_cast<double>(sequences);
  }
  return out;
}

}  // namespace

TEST_CASE("two connected nodes follow the first signal exactly") {
  const Graph k2 = generate(GraphFamilySpec::complete(2));
  for (const double delta : {0.05, 0.1, 0.25, 0.45}) {
    const OutcomeDistribution dist = exact_distribution(k2, delta);
    CHECK(std::abs(dist.p_red_consensus - (0.5 + delta)) < 1e-10);
    CHECK(std::abs(dist.p_blue_consensus - (0.5 - delta)) < 1e-10);
    CHECK(dist.p_consensus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dist.p_no_consensus == doctest::Approx(0.0));
    CHECK(dist.mean_color_changes == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("a lone node announces its own signal") {
  const Graph one(1, {});
  const OutcomeDistribution dist = exact_distribution(one, 0.25);
  CHECK(dist.p_red_consensus == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(dist.p_consensus == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact outcome masses always sum to one") {
  const Graph graphs[] = {
      generate(GraphFamilySpec::complete(4)),
      generate(GraphFamilySpec::star(3)),
      generate(GraphFamilySpec::cycle(5)),
      generate(GraphFamilySpec::clique_with_leaves(2, 1)),
  };
  for (const Graph& g : graphs) {
    for (const double delta : {0.05, 0.25}) {
      const OutcomeDistribution dist = exact_distribution(g, delta);
      CHECK(dist.p_red_consensus + dist.p_blue_consensus +
                dist.p_no_consensus ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(dist.p_consensus ==
            doctest::Approx(dist.p_red_consensus + dist.p_blue_consensus)
                .epsilon(1e-12));
      CHECK(dist.max_residual < 1e-10);
      CHECK_FALSE(dist.used_iterative);
      CHECK(dist.mean_color_changes >= 0.0);
    }
  }
}

TEST_CASE("star with two leaves matches a large simulation") {
  const Graph g = generate(GraphFamilySpec::star(2));
  const double delta = 0.1;
  const OutcomeDistribution exact = exact_distribution(g, delta);

  const std::uint64_t trials = 1000000;
  std::uint64_t red = 0;
  std::uint64_t blue = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    SplitMix64 rng(derive_stream(13131, i));
    const TrajectoryRecord rec =
        run(g, SignalAssignment::sample(3, delta, rng), rng);
    REQUIRE(rec.stabilized);
    red += rec.terminal->cls == TerminalClass::RedConsensus ? 1 : 0;
    blue += rec.terminal->cls == TerminalClass::BlueConsensus ? 1 : 0;
  }
  const double n = static_cast<double>(trials);
  const double p_red = static_cast<double>(red) / n;
  const double p_blue = static_cast<double>(blue) / n;
  const double sigma_red =
      std::sqrt(exact.p_red_consensus * (1.0 - exact.p_red_consensus) / n);
  const double sigma_blue =
      std::sqrt(exact.p_blue_consensus * (1.0 - exact.p_blue_consensus) / n);
  CHECK(std::abs(p_red - exact.p_red_consensus) <= 3.0 * sigma_red);
  CHECK(std::abs(p_blue - exact.p_blue_consensus) <= 3.0 * sigma_blue);
}

TEST_CASE("exact distribution tracks simulation on a small clique") {
  const Graph g = generate(GraphFamilySpec::complete(4));
  const double delta = 0.1;
  const OutcomeDistribution exact = exact_distribution(g, delta);

  const std::uint64_t trials = 20000;
  std::uint64_t red = 0;
  std::uint64_t blue = 0;
  std::uint64_t none = 0;
  double changes = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    SplitMix64 rng(derive_stream(909090, i));
    const TrajectoryRecord rec =
        run(g, SignalAssignment::sample(4, delta, rng), rng);
    REQUIRE(rec.stabilized);
    switch (rec.terminal->cls) {
      case TerminalClass::RedConsensus: ++red; break;
      case TerminalClass::BlueConsensus: ++blue; break;
      case TerminalClass::NoConsensus: ++none; break;
    }
    changes += static_cast<double>(rec.color_changes);
  }
  const double n = static_cast<double>(trials);
  const double tv =
      0.5 * (std::abs(static_cast<double>(red) / n - exact.p_red_consensus) +
             std::abs(static_cast<double>(blue) / n - exact.p_blue_consensus) +
             std::abs(static_cast<double>(none) / n - exact.p_no_consensus));
  CHECK(tv <= 0.03);
  CHECK(std::abs(changes / n - exact.mean_color_changes) < 0.05);
}

TEST_CASE("expected red volume matches full enumeration") {
  struct Case {
    GraphFamilySpec spec;
    double delta;
    std::uint64_t horizon;
  };
  const Case cases[] = {
      {GraphFamilySpec::complete(3), 0.1, 0},
      {GraphFamilySpec::complete(3), 0.1, 3},
      {GraphFamilySpec::complete(3), 0.45, 2},
      {GraphFamilySpec::cycle(4), 0.2, 4},
      {GraphFamilySpec::star(2), 0.25, 3},
  };
  for (const Case& c : cases) {
    const Graph g = generate(c.spec);
    const ExactRedVolume fast =
        exact_expected_red_volume(g, c.delta, c.horizon);
    const ExactRedVolume slow = brute_force_red_volume(g, c.delta, c.horizon);
    CHECK(fast.announced == doctest::Approx(slow.announced).epsilon(1e-9));
    CHECK(fast.credited == doctest::Approx(slow.credited).epsilon(1e-9));
  }
}

TEST_CASE("expected red volume meets its documented floors") {
  const Graph k3 = generate(GraphFamilySpec::complete(3));
  const ExactRedVolume t0 = exact_expected_red_volume(k3, 0.1, 0);
  CHECK(t0.announced == doctest::Approx(0.0));
  CHECK(t0.credited == doctest::Approx(1.2 * 3.0).epsilon(1e-12));

  CHECK(exact_expected_red_volume(k3, 0.1, 3).credited >= 1.8);
  const Graph c4 = generate(GraphFamilySpec::cycle(4));
  CHECK(exact_expected_red_volume(c4, 0.2, 4).credited >= 2.8);

  for (const double delta : {0.05, 0.25, 0.45}) {
    for (std::uint64_t horizon = 0; horizon <= 6; ++horizon) {
      const ExactRedVolume r = exact_expected_red_volume(c4, delta, horizon);
      CHECK(r.credited >= (0.5 + delta) * 4.0 - 1e-9);
    }
  }
}

TEST_CASE("oracle size caps are enforced") {
  CHECK_THROWS_AS(exact_distribution(generate(GraphFamilySpec::star(8)), 0.1),
                  SizeError);
  CHECK_THROWS_AS(
      exact_expected_red_volume(generate(GraphFamilySpec::complete(7)), 0.1, 2),
      SizeError);
  CHECK_THROWS_AS(
      exact_expected_red_volume(generate(GraphFamilySpec::complete(3)), 0.1,
                                13),
      SizeError);
  CHECK_THROWS_AS(exact_distribution(generate(GraphFamilySpec::complete(3)),
                                     0.0),
                  ParameterError);
}
