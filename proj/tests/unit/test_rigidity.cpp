#include <cmath>
#include <vector>

#include "doctest.h"
#include "resokit/errors.hpp"
#include "resokit/geometry.hpp"
#include "resokit/rigidity.hpp"

using namespace resokit::rigidity;
using resokit::geometry::BoundaryInvariants;
using resokit::geometry::ellipsoid_invariants;
using resokit::geometry::sphere_invariants;

TEST_CASE("exact ball-union invariants identify (m, rho) across dimensions") {
  for (const int d : {3, 5, 7}) {
    for (const double rho : {0.5, 1.0, 3.0}) {
      for (const int m : {1, 2, 5}) {
        const auto inv = sphere_invariants(d, rho, m);
        const auto verdict = decide_ball_union(inv);
        CHECK(verdict.is_ball_union);
        CHECK(verdict.m == m);
        CHECK(std::abs(verdict.rho - rho) <= 1e-9 * rho);
        CHECK(std::abs(verdict.cs_defect) <= 1e-9);
      }
    }
  }
}

TEST_CASE("identification survives measurement-sized perturbations") {
  auto inv = sphere_invariants(3, 1.0, 2);
  inv.A1 *= 1.005;
  inv.A2 *= 0.99;
  inv.A3 *= 1.02;
  const auto verdict = decide_ball_union(inv);
  CHECK(verdict.is_ball_union);
  CHECK(verdict.m == 2);
  CHECK(std::abs(verdict.rho - 1.0) <= 0.05);
}

TEST_CASE("the prolate ellipsoid is rejected with a positive defect") {
  const auto verdict = decide_ball_union(ellipsoid_invariants(1.0, 1.0, 2.0));
  CHECK_FALSE(verdict.is_ball_union);
  CHECK(verdict.cs_defect > 0.01);
  CHECK(verdict.reason.find("defect") != std::string::npos);
}

TEST_CASE("non-integer component estimates are rejected") {
  // Interpolate between the m=1 and m=2 invariant vectors: the curvature
  // defect stays ~0 but the component count lands near 1.5.
  const auto one = sphere_invariants(3, 1.0, 1);
  const auto two = sphere_invariants(3, 1.0, 2);
  BoundaryInvariants mid;
  mid.d = 3;
  mid.A1 = 0.5 * (one.A1 + two.A1);
  mid.A2 = 0.5 * (one.A2 + two.A2);
  mid.A3 = 0.5 * (one.A3 + two.A3);
  const auto verdict = decide_ball_union(mid);
  CHECK_FALSE(verdict.is_ball_union);
  CHECK(std::abs(verdict.m_estimate - 1.5) <= 1e-9);
  CHECK(verdict.reason.find("integer") != std::string::npos);
}

TEST_CASE("tolerance profiles") {
  const auto pipeline = pipeline_tolerances();
  CHECK(pipeline.defect_tolerance == doctest::Approx(0.05));
  CHECK(pipeline.integer_tolerance == doctest::Approx(0.05));
  const auto exact = exact_tolerances();
  CHECK(exact.defect_tolerance <= 1e-8);

  // Exact tolerances still accept exact inputs but reject the perturbed ones.
  CHECK(decide_ball_union(sphere_invariants(3, 1.0, 2), exact).is_ball_union);
  auto nudged = sphere_invariants(3, 1.0, 2);
  nudged.A3 *= 1.001;
  CHECK_FALSE(decide_ball_union(nudged, exact).is_ball_union);
}

TEST_CASE("invalid invariants throw") {
  BoundaryInvariants bad;
  bad.d = 3;
  bad.A1 = 1.0;
  bad.A2 = -2.0;
  bad.A3 = 3.0;
  CHECK_THROWS_AS(decide_ball_union(bad), resokit::NonPositiveInvariant);
  CHECK_THROWS_AS(alexandrov_fenchel_defect(bad), resokit::NonPositiveInvariant);
}

TEST_CASE("isoperimetric-type defect: zero on round spheres") {
  for (const int d : {3, 5, 7}) {
    for (const double rho : {0.5, 1.0, 3.0}) {
      CHECK(std::abs(alexandrov_fenchel_defect(sphere_invariants(d, rho))) <=
            1e-10);
    }
  }
}

TEST_CASE("isoperimetric-type defect: positive and monotone on ellipsoids") {
  std::vector<double> defects;
  for (const double c : {1.2, 2.0, 5.0}) {
    defects.push_back(alexandrov_fenchel_defect(ellipsoid_invariants(1.0, 1.0, c)));
  }
  CHECK(defects[0] > 0.0);
  CHECK(defects[1] > defects[0]);
  CHECK(defects[2] > defects[1]);
  // Reference values from the prolate closed forms.
  CHECK(defects[0] == doctest::Approx(0.0032077).epsilon(1e-3));
  CHECK(defects[1] == doctest::Approx(0.05569178).epsilon(1e-4));
  CHECK(defects[2] == doctest::Approx(0.3679785).epsilon(1e-4));
}

TEST_CASE("multi-component unions carry a positive defect in the radius proxy") {
  // m disjoint equal balls: the defect formula sees the aggregated A2 grow
  // faster than A1^{(d-2)/(d-1)}, so the defect is positive for m >= 2.
  CHECK(alexandrov_fenchel_defect(sphere_invariants(3, 1.0, 2)) > 0.0);
  CHECK(alexandrov_fenchel_defect(sphere_invariants(5, 1.0, 3)) > 0.0);
}
