#include <benchmark/benchmark.h>

#include <cstdint>

#include "majority/dynamics.hpp"
#include "majority/generators.hpp"
#include "majority/graph.hpp"
#include "majority/oracle.hpp"
#include "majority/rng.hpp"
#include "majority/spectral.hpp"
#include "majority/walks.hpp"

using namespace majority;

namespace {

void BM_StepThroughput(benchmark::State& state) {
  const Graph g = generate(
      GraphFamilySpec::random_regular(static_cast<std::uint32_t>(state.range(0)),
                                      8, 42));
  const NodeId n = g.node_count();
  SplitMix64 rng(7);
  std::uint64_t steps = 0;
  for (auto _ : state) {
    state.PauseTiming();
    DynamicsState st(g, SignalAssignment::sample(n, 0.3, rng));
    state.ResumeTiming();
    const std::uint64_t budget = default_max_steps(g);
    while (!st.stable() && st.time() < budget) {
      st.step(static_cast<NodeId>(rng.bounded(n)));
    }
    steps += st.time();
    benchmark::DoNotOptimize(st.potential());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_StepThroughput)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_FullTrajectory(benchmark::State& state) {
  const Graph g = generate(
      GraphFamilySpec::complete(static_cast<std::uint32_t>(state.range(0))));
  const NodeId n = g.node_count();
  SplitMix64 rng(11);
  for (auto _ : state) {
    const TrajectoryRecord rec =
        run(g, SignalAssignment::sample(n, 0.1, rng), rng);
    benchmark::DoNotOptimize(rec.color_changes);
  }
}
BENCHMARK(BM_FullTrajectory)->Arg(50)->Arg(200);

void BM_Spectrum(benchmark::State& state) {
  const Graph g = generate(GraphFamilySpec::random_regular(
      static_cast<std::uint32_t>(state.range(0)), 4, 13));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectrum(g).lambda);
  }
}
BENCHMARK(BM_Spectrum)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SparseLambda(benchmark::State& state) {
  const Graph g = generate(GraphFamilySpec::random_regular(
      static_cast<std::uint32_t>(state.range(0)), 16, 13));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_lambda(g, 5, 3000).lambda);
  }
}
BENCHMARK(BM_SparseLambda)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_ExactDistribution(benchmark::State& state) {
  const Graph g = generate(
      GraphFamilySpec::complete(static_cast<std::uint32_t>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_distribution(g, 0.1).p_red_consensus);
  }
}
BENCHMARK(BM_ExactDistribution)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_WalkHitting(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const HittingEstimate est = simulate_hitting(
        WalkKind::PlusMinusOne, 1, 0.5, 100.0, 10000, ++seed);
    benchmark::DoNotOptimize(est.p_hit);
  }
}
BENCHMARK(BM_WalkHitting)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
