#pragma once

#include <string>

#include "resokit/geometry.hpp"

namespace resokit::rigidity {

// Decision procedure: are (A1, A2, A3) those of a disjoint union of m equal
// round balls of some radius rho?
//
// candidate radius   rho = (d-1) A1 / A2
// candidate count    m   = A1 / (sigma_d rho^{d-1})
// Cauchy–Schwarz defect   A3 A1 / ((13 + 2/(d-1)) A2²) - 1  >= 0, with
// equality iff the mean curvature is constant and the curvature tensor is
// umbilical, i.e. iff every component is a round sphere of one common radius.
struct RigidityVerdict {
  bool is_ball_union = false;
  double rho = 0.0;        // candidate common radius
  double m_estimate = 0.0; // A1 / (sigma_d rho^{d-1}), integer iff rigid
  int m = 0;               // nearest integer component count (when verdict true)
  double cs_defect = 0.0;  // >= 0 up to roundoff; 0 iff equal round spheres
  std::string reason;      // human-readable explanation of the verdict
};

struct RigidityTolerances {
  double defect_tolerance = 0.05;   // cs_defect acceptance gate
  double integer_tolerance = 0.05;  // relative |m_estimate - round| gate
};

// Preset gates: `pipeline` absorbs trace-fit noise (5%); `exact` is for
// invariants computed directly from geometry (1e-9).
RigidityTolerances pipeline_tolerances();
RigidityTolerances exact_tolerances();

// Throws NonPositiveInvariant unless A1, A2, A3 > 0.
// Half-integer m_estimate ties (|m - round(m)| exactly at tolerance boundary
// from both sides) fail closed: verdict false.
RigidityVerdict decide_ball_union(const geometry::BoundaryInvariants& inv,
                                  const RigidityTolerances& tol = pipeline_tolerances());

// Alexandrov–Fenchel style defect from (A1, A2) alone:
//   (A2 / ((d-1) sigma_d))^{1/(d-2)} / (A1 / sigma_d)^{1/(d-1)} - 1
// Zero exactly on single round spheres (any radius), positive otherwise
// (convex bodies); it measures deviation from roundness one rung below the
// A3-based test. Requires d >= 3 and A1, A2 > 0 (NonPositiveInvariant).
double alexandrov_fenchel_defect(const geometry::BoundaryInvariants& inv);

}  // namespace resokit::rigidity
