#include "resokit/rigidity.hpp"

#include <cmath>
#include <sstream>

#include "resokit/errors.hpp"

namespace resokit::rigidity {
namespace {

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

}  // namespace

RigidityTolerances pipeline_tolerances() { return {0.05, 0.05}; }
RigidityTolerances exact_tolerances() { return {1e-9, 1e-9}; }

RigidityVerdict decide_ball_union(const geometry::BoundaryInvariants& inv,
                                  const RigidityTolerances& tol) {
  if (!(inv.A1 > 0.0) || !(inv.A2 > 0.0) || !(inv.A3 > 0.0)) {
    throw NonPositiveInvariant("decide_ball_union: A1, A2, A3 must all be positive");
  }
  const int d = inv.d;
  if (d < 3) throw Error("decide_ball_union: dimension must be >= 3");

  RigidityVerdict verdict;
  verdict.rho = (d - 1) * inv.A1 / inv.A2;
  const double sigma = geometry::unit_sphere_area(d);
  verdict.m_estimate = inv.A1 / (sigma * std::pow(verdict.rho, d - 1));
  verdict.cs_defect =
      inv.A3 * inv.A1 / ((13.0 + 2.0 / (d - 1)) * inv.A2 * inv.A2) - 1.0;

  const long rounded = std::lround(verdict.m_estimate);
  if (verdict.cs_defect > tol.defect_tolerance) {
    verdict.is_ball_union = false;
    verdict.reason = "curvature defect " + fmt(verdict.cs_defect) +
                     " exceeds tolerance " + fmt(tol.defect_tolerance) +
                     ": boundary is not a union of equal round spheres";
    return verdict;
  }
  if (rounded < 1 ||
      std::abs(verdict.m_estimate - static_cast<double>(rounded)) >
          tol.integer_tolerance * static_cast<double>(rounded)) {
    verdict.is_ball_union = false;
    verdict.reason = "component estimate " + fmt(verdict.m_estimate) +
                     " is not within tolerance of a positive integer";
    return verdict;
  }
  verdict.is_ball_union = true;
  verdict.m = static_cast<int>(rounded);
  verdict.reason = "invariants match m=" + std::to_string(verdict.m) +
                   " ball(s) of radius " + fmt(verdict.rho) +
                   " (curvature defect " + fmt(verdict.cs_defect) + ")";
  return verdict;
}

double alexandrov_fenchel_defect(const geometry::BoundaryInvariants& inv) {
  if (inv.d < 3) throw Error("alexandrov_fenchel_defect: dimension must be >= 3");
  if (!(inv.A1 > 0.0) || !(inv.A2 > 0.0)) {
    throw NonPositiveInvariant("alexandrov_fenchel_defect: A1 and A2 must be positive");
  }
  const double sigma = geometry::unit_sphere_area(inv.d);
  const double mean_radius =
      std::pow(inv.A2 / ((inv.d - 1) * sigma), 1.0 / (inv.d - 2));
  const double area_radius = std::pow(inv.A1 / sigma, 1.0 / (inv.d - 1));
  return mean_radius / area_radius - 1.0;
}

}  // namespace resokit::rigidity
