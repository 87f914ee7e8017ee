#include <benchmark/benchmark.h>

#include "spintraj/guidance.hpp"
#include "spintraj/quantumfields.hpp"
#include "spintraj/wavefunction.hpp"

namespace {

using namespace spintraj;

WaveModel two_slit() {
  const PhysicalConstants pc;
  return WaveModel::superposition({{{0, 10}, {100, 0}, {1, 1}, {1, 0}},
                                   {{0, -10}, {100, 0}, {1, 1}, {1, 0}}},
                                  pc);
}

void BM_FieldsSinglePacket(benchmark::State& state) {
  const PhysicalConstants pc;
  const WaveModel model = WaveModel::single({{0, 0}, {0, 0}, {1, 1}, {1, 0}}, pc);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.fields({1.0, 0.5}, t));
    t += 1e-6;
  }
}
BENCHMARK(BM_FieldsSinglePacket);

void BM_FieldsTwoSlit(benchmark::State& state) {
  const WaveModel model = two_slit();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.fields({100.0 * t + 1.0, 9.5}, t));
    t += 1e-6;
  }
}
BENCHMARK(BM_FieldsTwoSlit);

void BM_LorentzForce(benchmark::State& state) {
  const PhysicalConstants pc;
  const WaveModel model = WaveModel::single({{0, 0}, {0, 0}, {2, 1}, {1, 0}}, pc);
  const SpinVector spin = SpinVector::up(pc);
  const GuidanceMode mode{true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lorentz_force(model, {1.0, 0.5}, 1.0, spin, mode, {}));
  }
}
BENCHMARK(BM_LorentzForce);

}  // namespace
