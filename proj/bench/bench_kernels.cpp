#include <benchmark/benchmark.h>

#include "fronttrack/field.hpp"
#include "fronttrack/oracle.hpp"
#include "fronttrack/weak.hpp"

using namespace fronttrack;

namespace {

const Parameters kP(1.0, 1.0, 3.0, 1.0, 1.0, 2.0);

FHNState initial(const FHNConfig& c) {
  return init_fhn(c, kP, IntervalSet({{-1, 1}}), Profile::constant(0.0));
}

void BM_StepParallel(benchmark::State& state) {
  const auto c = FHNConfig::make(kP, 0.01, -3.0, 3.0, static_cast<double>(state.range(0)));
  FHNState a = initial(c), b;
  for (auto _ : state) {
    step_fhn_into(c, kP, a, b);
    std::swap(a, b);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(c.points()));
}

void BM_StepSerial(benchmark::State& state) {
  const auto c = FHNConfig::make(kP, 0.01, -3.0, 3.0, static_cast<double>(state.range(0)));
  FHNState a = initial(c), b;
  for (auto _ : state) {
    step_fhn_reference(c, kP, a, b);
    std::swap(a, b);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(c.points()));
}

const WeakSolution& pulses() {
  static const WeakSolution w =
      run_weak(kP, IntervalSet({{-6, -4.5}, {-2, -1}, {0.5, 2}}),
               Profile({-8, -3, -1.5, 0, 8}, {0.2, 0.2, 1.2, 0.2, 0.2}), 6.0);
  return w;
}

void BM_FieldParallel(benchmark::State& state) {
  const auto xs = linspace(-8, 8, static_cast<std::size_t>(state.range(0)));
  const auto ts = linspace(0, 6, 51);
  const auto& w = pulses();  // built outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(sample_field(w, xs, ts));
}

void BM_FieldSerial(benchmark::State& state) {
  const auto xs = linspace(-8, 8, static_cast<std::size_t>(state.range(0)));
  const auto ts = linspace(0, 6, 51);
  const auto& w = pulses();  // built outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(sample_field_reference(w, xs, ts));
}

}  // namespace

BENCHMARK(BM_StepParallel)->Arg(10)->Arg(40);
BENCHMARK(BM_StepSerial)->Arg(10)->Arg(40);
BENCHMARK(BM_FieldParallel)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldSerial)->Arg(201)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
