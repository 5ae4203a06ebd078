#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "resokit/polyroot.hpp"
#include "resokit/radial_model.hpp"

using cd = std::complex<double>;

namespace {

std::vector<cd> roots_of_unity_poly(int degree) {
  std::vector<cd> coeffs(static_cast<std::size_t>(degree) + 1, cd(0.0));
  coeffs.front() = -1.0;
  coeffs.back() = 1.0;
  return coeffs;
}

void BM_find_roots_cyclotomic(benchmark::State& state) {
  const auto coeffs = roots_of_unity_poly(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(resokit::roots::find_roots(coeffs));
  }
}
BENCHMARK(BM_find_roots_cyclotomic)->RangeMultiplier(2)->Range(8, 64);

void BM_find_roots_radial(benchmark::State& state) {
  const auto poly = resokit::radial::radial_polynomial(
      3, static_cast<int>(state.range(0)), resokit::radial::BoundaryCondition::Neumann);
  const auto coeffs = poly.complex_coefficients();
  for (auto _ : state) {
    benchmark::DoNotOptimize(resokit::roots::find_roots(coeffs));
  }
}
BENCHMARK(BM_find_roots_radial)->Arg(5)->Arg(10)->Arg(20);

void BM_winding_count(benchmark::State& state) {
  const auto coeffs = roots_of_unity_poly(static_cast<int>(state.range(0)));
  const resokit::roots::Contour contour{cd(0.0), 2.0, 256};
  for (auto _ : state) {
    benchmark::DoNotOptimize(resokit::roots::winding_count(coeffs, contour));
  }
}
BENCHMARK(BM_winding_count)->Arg(16)->Arg(64);

void BM_ball_resonances(benchmark::State& state) {
  const int l_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(resokit::radial::ball_resonances(3, 1.0, l_max));
  }
}
BENCHMARK(BM_ball_resonances)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
