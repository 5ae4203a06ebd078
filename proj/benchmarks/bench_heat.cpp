#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "resokit/heat_trace.hpp"
#include "resokit/radial_model.hpp"
#include "resokit/scattering.hpp"

using namespace resokit;

namespace {

const radial::ResonanceSet& ball_set() {
  static const radial::ResonanceSet set = radial::ball_resonances(3, 1.0, 20);
  return set;
}

void BM_heat_trace_resonance(benchmark::State& state) {
  scattering::CanonicalProductParams params;
  params.genus = 3;
  params.c = 1.0 / 3.0;
  params.resonances = ball_set();
  const double t = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(heat::heat_trace_resonance(params, t));
  }
}
BENCHMARK(BM_heat_trace_resonance)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_heat_trace_modes(benchmark::State& state) {
  const double t = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(heat::heat_trace_modes(3, 1.0, t, 20));
  }
}
BENCHMARK(BM_heat_trace_modes)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_fit_heat_coefficients(benchmark::State& state) {
  heat::HeatSamples samples;
  const int nt = 24;
  for (int i = 0; i < nt; ++i) {
    const double t = 1e-3 * std::pow(100.0, static_cast<double>(i) / (nt - 1));
    samples.t.push_back(t);
    samples.value.push_back(0.3 * std::pow(t, -1.5) - 1.2 / t + 0.7 / std::sqrt(t));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(heat::fit_heat_coefficients(samples, 3));
  }
}
BENCHMARK(BM_fit_heat_coefficients);

void BM_heat_samples_from_resonances(benchmark::State& state) {
  heat::CalibrationConstants cal;
  cal.nt = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heat::heat_samples_from_resonances(ball_set(), cal));
  }
}
BENCHMARK(BM_heat_samples_from_resonances)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
