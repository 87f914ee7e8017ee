#include <benchmark/benchmark.h>

#include "spintraj/ensemble.hpp"
#include "spintraj/integrator.hpp"

namespace {

using namespace spintraj;

void BM_CatherineWheelTrajectory(benchmark::State& state) {
  const PhysicalConstants pc;
  const WaveModel model = WaveModel::single({{0, 0}, {0, 0}, {1, 1}, {1, 0}}, pc);
  const SpinVector spin = SpinVector::up(pc);
  IntegratorConfig cfg;
  cfg.t1 = 4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_trajectory(model, spin, {true}, {1.0, 0.0}, cfg));
  }
}
BENCHMARK(BM_CatherineWheelTrajectory);

void BM_TwoSlitTrajectory(benchmark::State& state) {
  const PhysicalConstants pc;
  const WaveModel model = WaveModel::superposition({{{0, 10}, {100, 0}, {1, 1}, {1, 0}},
                                                    {{0, -10}, {100, 0}, {1, 1}, {1, 0}}},
                                                   pc);
  const SpinVector spin = SpinVector::up(pc);
  IntegratorConfig cfg;
  cfg.t1 = 12.0;
  cfg.dense_output_stride = 0.12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_trajectory(model, spin, {true}, {0.8, 10.9}, cfg));
  }
}
BENCHMARK(BM_TwoSlitTrajectory);

void BM_SampleDensity(benchmark::State& state) {
  const PhysicalConstants pc;
  const WaveModel model = WaveModel::superposition({{{0, 2.5}, {0, 0}, {1, 1}, {1, 0}},
                                                    {{0, -2.5}, {0, 0}, {1, 1}, {1, 0}}},
                                                   pc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_density(model, 1000, 7));
  }
}
BENCHMARK(BM_SampleDensity);

}  // namespace
