#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "resokit/errors.hpp"
#include "resokit/heat_trace.hpp"
#include "resokit/radial_model.hpp"
#include "resokit/scattering.hpp"

using namespace resokit::heat;
using resokit::radial::scale_resonances;
using resokit::scattering::CanonicalProductParams;
using resokit::scattering::det_S_direct;
using resokit::scattering::fit_constant_c;
using cd = std::complex<double>;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  return grid;
}

HeatSamples synthetic_samples(const std::vector<double>& a, int d,
                              const std::vector<double>& t) {
  HeatSamples samples;
  samples.t = t;
  for (const double ti : t) {
    double v = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
      v += a[n] * std::pow(ti, (static_cast<double>(n) - d) / 2.0);
    }
    samples.value.push_back(v);
  }
  return samples;
}

}  // namespace

TEST_CASE("coefficient fit recovers a synthetic expansion") {
  const std::vector<double> truth{0.3, -1.2, 0.7, 0.05};
  const auto samples = synthetic_samples(truth, 3, log_grid(1e-3, 1e-1, 24));
  const auto fit = fit_heat_coefficients(samples, 3);
  REQUIRE(fit.a.size() == 4);
  for (std::size_t n = 0; n < truth.size(); ++n) {
    CHECK(std::abs(fit.a[n] - truth[n]) <= 1e-8 * std::abs(truth[n]));
  }
  CHECK(fit.residual_rms <= 1e-10);
  CHECK(fit.d == 3);
  CHECK(fit.a0_c_entangled);
  REQUIRE(fit.covariance.size() == 16);
}

TEST_CASE("coefficient fit rejects degenerate sample sets") {
  const std::vector<double> a{1.0, 1.0, 1.0, 1.0};
  // Too narrow a time span (< 1.5 decades).
  CHECK_THROWS_AS(
      fit_heat_coefficients(synthetic_samples(a, 3, log_grid(0.01, 0.02, 12)), 3),
      resokit::Error);
  // Too few samples.
  CHECK_THROWS_AS(
      fit_heat_coefficients(synthetic_samples(a, 3, log_grid(1e-3, 1e-1, 4)), 3),
      resokit::Error);
}

TEST_CASE("the product constant c only moves the t^{-d/2} coefficient") {
  const auto& set = testfx::unit_ball_set(20);
  CalibrationConstants cal;  // defaults: 24 log-spaced samples in [1e-3, 1e-1]
  const auto lo = heat_samples_from_resonances(set, cal, 0.0);
  const auto hi = heat_samples_from_resonances(set, cal, 1.0);
  const auto fit_lo = fit_heat_coefficients(lo, 3);
  const auto fit_hi = fit_heat_coefficients(hi, 3);
  CHECK(std::abs(fit_hi.a[0] - fit_lo.a[0]) > 1e-3);
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::abs(fit_hi.a[n] - fit_lo.a[n]) <=
          1e-6 * (1.0 + std::abs(fit_lo.a[n])));
  }
}

TEST_CASE("resonance-side and mode-side traces agree") {
  const int l_max = 40;
  const auto& set = testfx::unit_ball_set(l_max);
  const auto direct = [&](double lambda) {
    return det_S_direct(3, 1.0, cd(lambda), l_max);
  };
  std::vector<double> grid(120);
  for (int i = 0; i < 120; ++i) grid[i] = 0.1 + (2.5 - 0.1) * i / 119.0;

  CanonicalProductParams params;
  params.genus = 3;
  params.resonances = set;
  params.c = fit_constant_c(set, direct, grid);

  for (const double t : {0.05, 0.02}) {
    const double from_resonances = heat_trace_resonance(params, t);
    const double from_modes = heat_trace_modes(3, 1.0, t, l_max);
    CHECK(std::abs(from_resonances - from_modes) <=
          5e-3 * std::abs(from_modes));
  }
}

TEST_CASE("calibration grid is log-spaced over the radius-scaled window") {
  CalibrationConstants cal;
  cal.t_min_factor = 1e-3;
  cal.t_max_factor = 1e-1;
  cal.nt = 10;
  const double rho = 1.7;
  const auto grid = calibration_t_grid(cal, rho);
  REQUIRE(grid.size() == 10);
  CHECK(grid.front() == doctest::Approx(1e-3 * rho * rho).epsilon(1e-12));
  CHECK(grid.back() == doctest::Approx(1e-1 * rho * rho).epsilon(1e-12));
  const double ratio = grid[1] / grid[0];
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    CHECK(grid[i + 1] / grid[i] == doctest::Approx(ratio).epsilon(1e-10));
  }
}

TEST_CASE("calibrated invariants round-trip through a scaled resonance set") {
  // Calibrate on the l<=18 unit-ball set, then recover the invariants of the
  // same ball scaled to rho = 0.7. The scaled set is exact, so the recovery
  // error is pure fit conditioning.
  const auto& base = testfx::unit_ball_set(18);
  CalibrationOptions options;
  options.l_max = 18;
  const auto cal = calibrate_alphas(base, options);

  const auto scaled = scale_resonances(base, 0.7);
  const auto inv = invariants_from_resonances(scaled, cal);
  const auto truth = resokit::geometry::sphere_invariants(3, 0.7);
  CHECK(std::abs(inv.A1 - truth.A1) <= 1e-6 * truth.A1);
  CHECK(std::abs(inv.A2 - truth.A2) <= 1e-6 * truth.A2);
  CHECK(std::abs(inv.A3 - truth.A3) <= 1e-5 * truth.A3);
}

TEST_CASE("alpha table file lookup") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "resokit-alpha-table-test.txt";
  {
    std::ofstream out(path);
    out << "# dimension alpha1 alpha2 alpha3\n";
    out << "3 0.25 -0.125 0.0625\n";
    out << "5 0.5 0.25 0.125\n";
  }
  AlphaTableEntry entry;
  CHECK(read_alpha_table(path.string(), 5, entry));
  CHECK(entry.alpha1 == doctest::Approx(0.5));
  CHECK(entry.alpha2 == doctest::Approx(0.25));
  CHECK(entry.alpha3 == doctest::Approx(0.125));
  CHECK_FALSE(read_alpha_table(path.string(), 7, entry));
  fs::remove(path);
}
