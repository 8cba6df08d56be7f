// Serial reference path vs OpenMP path for the sampling-heavy kernels.
// The second argument of each benchmark selects the policy: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "scg/fixtures.hpp"
#include "scg/modulus.hpp"
#include "scg/oracles.hpp"
#include "scg/parallel.hpp"
#include "scg/rconvex.hpp"

namespace {

scg::ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? scg::ExecPolicy::serial : scg::ExecPolicy::parallel;
}

void BM_DeltaOmegaEllipse(benchmark::State& state) {
  const auto f = scg::fixtures::ellipse();
  scg::ModulusBudget budget;
  budget.policy = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(scg::delta_omega(f.body, 0.25, budget).delta);
}

void BM_DeltaCircDisk(benchmark::State& state) {
  const auto f = scg::fixtures::five_disk();
  scg::ModulusBudget budget;
  budget.policy = policy_of(state);
  budget.circle_samples = 4096;
  for (auto _ : state) benchmark::DoNotOptimize(scg::delta_circ(f.body, scg::Point{0.1, 0.1}, 0.3, budget).delta);
}

void BM_BruteDelta(benchmark::State& state) {
  const auto f = scg::fixtures::three_generator();
  scg::BruteConfig cfg;
  cfg.policy = policy_of(state);
  cfg.h = 0.02;
  for (auto _ : state) benchmark::DoNotOptimize(scg::brute_delta(f.body, 0.5, cfg).delta);
}

void BM_ConditionC(benchmark::State& state) {
  const auto f = scg::fixtures::tangent_disks();
  const std::vector<double> eps{0.5, 0.25, 0.125, 0.0625};
  for (auto _ : state) {
    benchmark::DoNotOptimize(scg::condition_C_check(f.body, eps, {}, {}, policy_of(state)).pairs_tested);
  }
}

void BM_ConditionA(benchmark::State& state) {
  const auto f = scg::fixtures::five_disk();
  const std::vector<double> eps{0.5, 0.25, 0.125};
  for (auto _ : state) {
    benchmark::DoNotOptimize(scg::condition_A_check(f.body, 1.0, eps, {}, {}, policy_of(state)).pairs_tested);
  }
}

}  // namespace

BENCHMARK(BM_DeltaOmegaEllipse)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeltaCircDisk)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteDelta)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConditionC)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConditionA)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  scg::configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
