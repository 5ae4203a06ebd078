#include <benchmark/benchmark.h>

#include <complex>

#include "resokit/radial_model.hpp"
#include "resokit/scattering.hpp"

using cd = std::complex<double>;
using namespace resokit;

namespace {

const radial::ResonanceSet& ball_set(int l_max) {
  static const radial::ResonanceSet set20 = radial::ball_resonances(3, 1.0, 20);
  static const radial::ResonanceSet set40 = radial::ball_resonances(3, 1.0, 40);
  return l_max <= 20 ? set20 : set40;
}

void BM_mode_eigenvalue(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scattering::mode_eigenvalue(3, 1.0, l, cd(1.3)));
  }
}
BENCHMARK(BM_mode_eigenvalue)->Arg(0)->Arg(10)->Arg(40);

void BM_det_S_direct(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scattering::det_S_direct(3, 1.0, cd(lambda), 60));
  }
}
BENCHMARK(BM_det_S_direct)->Arg(1)->Arg(3);

void BM_det_S_product(benchmark::State& state) {
  scattering::CanonicalProductParams params;
  params.genus = 3;
  params.c = 1.0 / 3.0;
  params.resonances = ball_set(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scattering::det_S_product(params, cd(1.3)));
  }
}
BENCHMARK(BM_det_S_product)->Arg(20)->Arg(40);

void BM_log_derivative_det(benchmark::State& state) {
  scattering::CanonicalProductParams params;
  params.genus = 3;
  params.c = 1.0 / 3.0;
  params.resonances = ball_set(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scattering::log_derivative_det(params, 1.3));
  }
}
BENCHMARK(BM_log_derivative_det)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
