#pragma once

#include <vector>

namespace resokit::geometry {

// The three boundary invariants entering the trace coefficients:
//   A1 = |∂Ω|                        (surface area)
//   A2 = ∫ H dS                       (H = sum of principal curvatures)
//   A3 = ∫ (13 H² + 2 Σ κ_i²) dS
// Curvature sign convention: the outward divergence one, so the unit sphere
// of radius ρ in R^d has H = (d-1)/ρ > 0.
struct BoundaryInvariants {
  double A1 = 0.0;
  double A2 = 0.0;
  double A3 = 0.0;
  int d = 3;           // ambient dimension
  int components = 1;  // number of connected boundary components
};

// Surface area of the unit sphere S^{d-1} in R^d.
double unit_sphere_area(int d);

// Disjoint union of m round spheres of radius rho in R^d (closed forms).
BoundaryInvariants sphere_invariants(int d, double rho, int m = 1);

// Surface of revolution in R^3 from a profile curve (r(u), z(u)), r >= 0,
// rotated about the z-axis. The profile is given as sampled points; a cubic
// spline in cumulative chordal arclength reconstructs the curve.
//
// Orientation: the profile must run counterclockwise in the (r, z) half-plane
// with the body interior on its left, so the outward normal points away from
// the solid. Closed profiles repeat the first point last (periodic spline);
// open profiles must start and end on the axis r = 0 (spheres, capsules) and
// the integrand's removable r -> 0 endpoint limit is handled by skipping a
// two-segment margin whose contribution is extrapolated by the quadrature.
struct RevolutionProfile {
  std::vector<double> r;
  std::vector<double> z;
  bool closed = false;  // true: periodic profile not meeting the axis
};

struct RevolutionOptions {
  int quadrature_order = 8;  // Gauss-Legendre points per spline segment
};

// Throws DegenerateProfile if the profile has fewer than 4 points, r < 0
// beyond roundoff, or vanishing interior radius (r <= 1e-9 * max r away from
// open-profile axis endpoints).
BoundaryInvariants revolution_invariants(const RevolutionProfile& profile,
                                         const RevolutionOptions& options = {});

// Triaxial ellipsoid x²/a² + y²/b² + z²/c² = 1 in R^3, by tensor-product
// quadrature (Gauss-Legendre in the polar angle, trapezoid in the azimuth,
// which is spectrally accurate for the periodic direction).
struct EllipsoidOptions {
  int theta_order = 64;  // polar Gauss-Legendre points
};
BoundaryInvariants ellipsoid_invariants(double a, double b, double c,
                                        const EllipsoidOptions& options = {});

}  // namespace resokit::geometry
