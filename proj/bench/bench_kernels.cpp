#include <benchmark/benchmark.h>

#include "perioloz/asymptotics.hpp"
#include "perioloz/kernel_exact.hpp"
#include "perioloz/sampler.hpp"

using namespace perioloz;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_KernelMatrix(benchmark::State& st) {
  auto spec = WeightSpec::from_q({1.5, 2, 1.0 / 3}, 0.6, 12);
  std::vector<LatticePoint> pts;
  for (int t = -3; t <= 3; ++t) pts.push_back(LatticePoint::from_h(t, t % 2 ? 0.0 : -0.5));
  for (auto _ : st) benchmark::DoNotOptimize(kernel_matrix(spec, pts, QuadControl{}, exec_of(st)));
}

void BM_SampleBatch(benchmark::State& st) {
  auto spec = WeightSpec::from_q({2, 0.5}, 0.8, 20);
  SampleRun run;
  run.seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(sample_batch(spec, run, 0, 64, exec_of(st)));
}

void BM_PhaseGrid(benchmark::State& st) {
  auto ls = LimitSpec::make({1.5, 2, 1.0 / 3}, 1.0, 1);
  std::vector<double> taus, chis;
  for (int i = 0; i < 30; ++i) {
    taus.push_back(-0.9 + 1.85 * i / 29.0);
    chis.push_back(-3.0 + 5.0 * i / 29.0);
  }
  for (auto _ : st) benchmark::DoNotOptimize(phase_grid(ls, taus, chis, exec_of(st)));
}

}  // namespace

// Argument 0 is the serial reference, 1 the OpenMP path.
BENCHMARK(BM_KernelMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
