#include <benchmark/benchmark.h>

#include "dac/evaluation.hpp"
#include "dac/sweep.hpp"
#include "support/generators.hpp"

namespace {

dac::Plant sample_plant(Eigen::Index n) {
  dac::testing::Rng rng(7000 + static_cast<std::uint64_t>(n));
  return dac::testing::random_plant(rng, n, 0.5);
}

void BM_SolveDare(benchmark::State& state) {
  const dac::Plant plant = sample_plant(state.range(0));
  const dac::AugmentedSystem aug = dac::build_augmented(plant);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dac::solve_dare(aug));
  }
}
BENCHMARK(BM_SolveDare)->Arg(2)->Arg(5)->Arg(10);

void BM_NilpotentClosedForm(benchmark::State& state) {
  dac::testing::Rng rng(7100);
  const dac::Plant plant = dac::testing::random_bipartite_plant(rng, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dac::nilpotent_closed_form(plant));
  }
}
BENCHMARK(BM_NilpotentClosedForm);

void BM_SynthDeadbeat(benchmark::State& state) {
  const dac::Plant plant = sample_plant(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dac::synth_deadbeat(plant));
  }
}
BENCHMARK(BM_SynthDeadbeat)->Arg(5)->Arg(20);

void BM_SynthTheta(benchmark::State& state) {
  const dac::Plant plant = sample_plant(state.range(0));
  const dac::DirectedGraph graph = dac::DirectedGraph::from_sparsity(plant.A);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dac::synth_theta(plant, graph));
  }
}
BENCHMARK(BM_SynthTheta)->Arg(5)->Arg(20);

void BM_CostDeadbeatClosedForm(benchmark::State& state) {
  const dac::Plant plant = sample_plant(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dac::cost_deadbeat_closed_form(plant));
  }
}
BENCHMARK(BM_CostDeadbeatClosedForm)->Arg(5)->Arg(20);

void BM_CostSimulatedOptimal(benchmark::State& state) {
  const dac::Plant plant = sample_plant(state.range(0));
  const dac::Controller controller = dac::synth_optimal_centralized(plant);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dac::cost_simulated(plant, controller));
  }
}
BENCHMARK(BM_CostSimulatedOptimal)->Arg(2)->Arg(5);

void BM_SweepRow(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dac::run_sweep(dac::Family::thm1, 1.0, {{100.0, {}}},
                                            {dac::Strategy::deadbeat}));
  }
}
BENCHMARK(BM_SweepRow);

}  // namespace

BENCHMARK_MAIN();
