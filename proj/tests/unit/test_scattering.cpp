#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "resokit/errors.hpp"
#include "resokit/scattering.hpp"

using namespace resokit::scattering;
using resokit::radial::BoundaryCondition;
using resokit::radial::sh_dim;
using cd = std::complex<double>;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
  return grid;
}

}  // namespace

TEST_CASE("Weierstrass primary factor") {
  CHECK(std::abs(weierstrass_E(cd(0.0), 3) - cd(1.0)) == 0.0);
  CHECK(std::abs(weierstrass_E(cd(1.0), 3)) <= 1e-15);
  CHECK(std::abs(weierstrass_E(cd(1.0), 7)) <= 1e-14);

  // Near zero, E(z) = exp(-sum_{j>d} z^j/j); for z=0.1, d=3 the series is
  // dominated by -z^4/4.
  double log_ref = 0.0;
  for (int j = 4; j <= 40; ++j) log_ref -= std::pow(0.1, j) / j;
  const cd e = weierstrass_E(cd(0.1), 3);
  CHECK(std::abs(e - std::exp(log_ref)) <= 1e-15);
  CHECK(std::abs(e - cd(1.0) + std::pow(0.1, 4) / 4.0) <= 3e-6);

  SUBCASE("log branch is consistent with the direct product") {
    for (const cd z : {cd(0.3, 0.1), cd(0.45, -0.2), cd(-0.7, 0.4), cd(0.0, 0.9)}) {
      const cd direct = weierstrass_E(z, 3);
      const cd via_log = std::exp(log_weierstrass_E(z, 3));
      CHECK(std::abs(direct - via_log) <= 1e-13 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("mode eigenvalue closed form, l=0 Neumann") {
  // s_0(lambda) = e^{-2 i lambda rho} (1 + i lambda rho) / (1 - i lambda rho).
  for (const double rho : {1.0, 2.0}) {
    for (const double lambda : {0.3, 0.7, 1.9}) {
      const cd z = cd(0.0, 1.0) * lambda * rho;
      const cd expected = std::exp(-2.0 * z) * (1.0 + z) / (1.0 - z);
      const cd got = mode_eigenvalue(3, rho, 0, cd(lambda));
      CHECK(std::abs(got - expected) <= 1e-12);
    }
  }
  // lambda = 1, rho = 1: e^{-2i} * i.
  const cd got = mode_eigenvalue(3, 1.0, 0, cd(1.0));
  CHECK(std::abs(got - std::exp(cd(0.0, -2.0)) * cd(0.0, 1.0)) <= 1e-12);
}

TEST_CASE("mode eigenvalue normalization and unitarity") {
  for (const int l : {0, 1, 5}) {
    for (const int d : {3, 5}) {
      CHECK(std::abs(mode_eigenvalue(d, 1.0, l, cd(1e-6)) - cd(1.0)) <= 1e-5);
    }
  }
  for (const double lambda : linspace(0.1, 4.0, 9)) {
    for (const int l : {0, 2, 7}) {
      CHECK(std::abs(std::abs(mode_eigenvalue(3, 1.0, l, cd(lambda))) - 1.0) <=
            1e-12);
    }
  }
}

TEST_CASE("direct determinant: unitarity, functional equation, conjugation") {
  for (const double lambda : linspace(0.05, 4.5, 24)) {
    const cd s = det_S_direct(3, 1.0, cd(lambda), 60);
    CHECK(std::abs(std::abs(s) - 1.0) <= 1e-10);
    const cd s_neg = det_S_direct(3, 1.0, cd(-lambda), 60);
    CHECK(std::abs(s * s_neg - 1.0) <= 1e-9);
    CHECK(std::abs(std::conj(s) - s_neg) <= 1e-9);
  }
}

TEST_CASE("direct determinant: mode convergence and truncation guard") {
  // At fixed small lambda the per-mode factors approach 1 rapidly in l, so
  // partial products converge fast: each extra mode shrinks the error by
  // well over an order of magnitude.
  const cd full = det_S_direct(3, 1.0, cd(0.5), 30);
  cd partial = mode_eigenvalue(3, 1.0, 0, cd(0.5));
  double prev_err = std::abs(full - partial);
  for (int l = 1; l <= 3; ++l) {
    const cd factor = mode_eigenvalue(3, 1.0, l, cd(0.5));
    partial *= std::pow(factor, sh_dim(3, l));
    const double err = std::abs(full - partial);
    CHECK(err <= 0.1 * prev_err);
    prev_err = err;
  }

  // The l >= 1 contribution decays like lambda^3, so at low frequency the
  // l=0 factor alone captures the determinant to one part in a thousand.
  const cd tiny_full = det_S_direct(3, 1.0, cd(0.08), 30);
  const cd tiny_l0 = mode_eigenvalue(3, 1.0, 0, cd(0.08));
  CHECK(std::abs(tiny_full - tiny_l0) <= 1e-3);

  CHECK_THROWS_AS(det_S_direct(3, 1.0, cd(5.0), 2), resokit::TruncationNotReached);
}

TEST_CASE("direct determinant vanishes to high order at lambda = 0") {
  // |s(lambda) - 1| ~ lambda^d near zero: the log-log slope between two small
  // lambdas recovers the order d = 3.
  const double a = 0.02, b = 0.04;
  const double fa = std::abs(det_S_direct(3, 1.0, cd(a), 30) - 1.0);
  const double fb = std::abs(det_S_direct(3, 1.0, cd(b), 30) - 1.0);
  const double slope = std::log(fb / fa) / std::log(b / a);
  CHECK(slope >= 3.0 - 0.1);
  CHECK(slope <= 3.0 + 0.1);
}

TEST_CASE("canonical product: exact pair symmetry and trivial value") {
  CanonicalProductParams params;
  params.genus = 3;
  params.c = 0.1234;
  params.resonances = testfx::unit_ball_set(12);
  CHECK(std::abs(det_S_product(params, cd(0.0)) - cd(1.0)) == 0.0);
  for (const double lambda : {0.4, 1.3, 2.6}) {
    const cd plus = det_S_product(params, cd(lambda));
    const cd minus = det_S_product(params, cd(-lambda));
    CHECK(std::abs(plus * minus - 1.0) <= 1e-12);
  }
}

TEST_CASE("canonical product rejects evaluation at a resonance") {
  CanonicalProductParams params;
  params.genus = 3;
  params.resonances = testfx::unit_ball_set(2);
  const cd pole = params.resonances.entries.front().value;
  CHECK_THROWS_AS(det_S_product(params, pole), resokit::FactorPole);
}

TEST_CASE("pole guard: mode eigenvalue at a resonance") {
  // -i is the l=0 resonance of the unit ball.
  CHECK_THROWS_AS(mode_eigenvalue(3, 1.0, 0, cd(0.0, -1.0)),
                  resokit::PoleAtResonance);
}

TEST_CASE("constant fit: synthetic round trip recovers a known c") {
  const auto& set = testfx::unit_ball_set(12);
  CanonicalProductParams truth;
  truth.genus = 3;
  truth.c = 0.37;
  truth.resonances = set;
  const auto evaluator = [&](double lambda) {
    return det_S_product(truth, cd(lambda));
  };
  const auto grid = linspace(0.1, 2.0, 160);
  const double fitted = fit_constant_c(set, evaluator, grid);
  CHECK(std::abs(fitted - truth.c) <= 1e-10);
}

TEST_CASE("constant fit: coarse grids with fast phases are rejected") {
  const auto& set = testfx::unit_ball_set(4);
  CanonicalProductParams truth;
  truth.genus = 3;
  truth.c = 3.0;  // phase c*lambda^3 reaches ~3 rad by lambda=1
  truth.resonances = set;
  const auto evaluator = [&](double lambda) {
    return det_S_product(truth, cd(lambda));
  };
  const std::vector<double> coarse{1.0, 1.1, 1.2};
  CHECK_THROWS_AS(fit_constant_c(set, evaluator, coarse),
                  resokit::PhaseUnwrapFailure);
}

TEST_CASE("fitted product tracks the direct determinant") {
  const auto& set = testfx::unit_ball_set(30);
  const auto direct = [&](double lambda) {
    return det_S_direct(3, 1.0, cd(lambda), 30);
  };
  const auto grid = linspace(0.1, 2.5, 120);
  CanonicalProductParams params;
  params.genus = 3;
  params.resonances = set;
  params.c = fit_constant_c(set, direct, grid);
  CHECK(params.c == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  for (const double lambda : linspace(0.2, 2.0, 10)) {
    const cd ratio = det_S_product(params, cd(lambda)) / direct(lambda);
    CHECK(std::abs(ratio - 1.0) <= 1e-6);
  }
}

TEST_CASE("log-derivative of the determinant: odd symmetry and zero at 0") {
  CanonicalProductParams params;
  params.genus = 3;
  params.c = 1.0 / 3.0;
  params.resonances = testfx::unit_ball_set(12);
  CHECK(std::abs(log_derivative_det(params, 0.0)) <= 1e-12);

  // d/dlambda log s is even in lambda for this symmetric resonance set
  // (s(-lambda) = 1/s(lambda) and conjugation symmetry combine).
  for (const double lambda : {0.5, 1.5}) {
    const cd plus = log_derivative_det(params, lambda);
    const cd minus = log_derivative_det(params, -lambda);
    CHECK(std::abs(plus - minus) <= 1e-10 * (1.0 + std::abs(plus)));
  }
}
