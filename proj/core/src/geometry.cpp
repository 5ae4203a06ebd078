#include "resokit/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "resokit/errors.hpp"
#include "resokit/quadrature.hpp"
#include "resokit/spline.hpp"

namespace resokit::geometry {
namespace {

using vec3 = std::array<double, 3>;

double dot(const vec3& a, const vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const vec3& a) { return std::sqrt(dot(a, a)); }

}  // namespace

double unit_sphere_area(int d) {
  if (d < 2) throw Error("unit_sphere_area: dimension must be >= 2");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

BoundaryInvariants sphere_invariants(int d, double rho, int m) {
  if (!(rho > 0.0)) throw Error("sphere_invariants: radius must be positive");
  if (m < 1) throw Error("sphere_invariants: component count must be >= 1");
  const double sigma = unit_sphere_area(d);
  const double k = static_cast<double>(d - 1);  // each curvature is 1/rho, H = (d-1)/rho
  BoundaryInvariants inv;
  inv.d = d;
  inv.components = m;
  inv.A1 = m * sigma * std::pow(rho, d - 1);
  inv.A2 = m * sigma * k * std::pow(rho, d - 2);
  inv.A3 = m * sigma * (13.0 * k * k + 2.0 * k) * std::pow(rho, d - 3);
  return inv;
}

BoundaryInvariants revolution_invariants(const RevolutionProfile& profile,
                                         const RevolutionOptions& options) {
  const std::size_t n = profile.r.size();
  if (profile.z.size() != n) throw DegenerateProfile("profile r/z size mismatch");
  if (n < 4) throw DegenerateProfile("profile needs at least 4 points");
  if (options.quadrature_order < 2) throw Error("quadrature order must be >= 2");

  double r_max = 0.0;
  for (const double r : profile.r) r_max = std::max(r_max, r);
  if (!(r_max > 0.0)) throw DegenerateProfile("profile radius is identically zero");
  for (const double r : profile.r) {
    if (r < -1e-12 * r_max) throw DegenerateProfile("profile radius is negative");
  }
  if (profile.closed) {
    const double dr = std::abs(profile.r.front() - profile.r.back());
    const double dz = std::abs(profile.z.front() - profile.z.back());
    if (dr + dz > 1e-12 * (1.0 + r_max)) {
      throw DegenerateProfile("closed profile must repeat its first point last");
    }
  }

  // A pinched waist (r -> 0 away from the axis) is not a smooth surface of
  // revolution. Open profiles legitimately reach r = 0 at the axis ends, so
  // the first/last two samples are exempt there.
  const std::size_t margin = profile.closed ? 0 : 2;
  for (std::size_t i = margin; i + margin < n; ++i) {
    if (profile.r[i] <= 1e-9 * r_max) {
      throw DegenerateProfile("profile radius vanishes away from the axis");
    }
  }

  // Cumulative chordal parameter.
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double dr = profile.r[i] - profile.r[i - 1];
    const double dz = profile.z[i] - profile.z[i - 1];
    const double step = std::hypot(dr, dz);
    if (!(step > 0.0)) throw DegenerateProfile("profile has coincident consecutive points");
    u[i] = u[i - 1] + step;
  }

  const auto boundary =
      profile.closed ? CubicSpline::Boundary::periodic : CubicSpline::Boundary::not_a_knot;
  const CubicSpline rs(u, profile.r, boundary);
  const CubicSpline zs(u, profile.z, boundary);

  const quad::GaussRule& rule = quad::gauss_legendre(options.quadrature_order);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  BoundaryInvariants inv;
  inv.d = 3;
  inv.components = 1;
  for (std::size_t seg = 0; seg + 1 < n; ++seg) {
    const double mid = 0.5 * (u[seg] + u[seg + 1]);
    const double half = 0.5 * (u[seg + 1] - u[seg]);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double t = mid + half * rule.nodes[k];
      const double w = half * rule.weights[k];
      const double r = rs(t);
      const double rp = rs.derivative(t);
      const double rpp = rs.second_derivative(t);
      const double zp = zs.derivative(t);
      const double zpp = zs.second_derivative(t);
      const double speed = std::hypot(rp, zp);
      // Counterclockwise profile, interior on the left: curvatures are
      // positive for a convex body in the outward-divergence convention.
      const double kappa_m = (rp * zpp - zp * rpp) / (speed * speed * speed);
      const double kappa_phi = zp / (r * speed);
      const double mean = kappa_m + kappa_phi;
      const double sum_sq = kappa_m * kappa_m + kappa_phi * kappa_phi;
      const double area_el = two_pi * r * speed * w;
      inv.A1 += area_el;
      inv.A2 += mean * area_el;
      inv.A3 += (13.0 * mean * mean + 2.0 * sum_sq) * area_el;
    }
  }
  return inv;
}

BoundaryInvariants ellipsoid_invariants(double a, double b, double c,
                                        const EllipsoidOptions& options) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
    throw Error("ellipsoid semi-axes must be positive");
  }
  if (options.theta_order < 4) throw Error("theta quadrature order must be >= 4");

  const quad::GaussRule& theta_rule = quad::gauss_legendre(options.theta_order);
  const int n_phi = 2 * options.theta_order;  // trapezoid: spectral in the periodic angle
  const double w_phi = 2.0 * std::numbers::pi / n_phi;

  BoundaryInvariants inv;
  inv.d = 3;
  inv.components = 1;
  for (std::size_t it = 0; it < theta_rule.nodes.size(); ++it) {
    const double theta = 0.5 * std::numbers::pi * (theta_rule.nodes[it] + 1.0);
    const double wt = 0.5 * std::numbers::pi * theta_rule.weights[it];
    const double st = std::sin(theta), ct = std::cos(theta);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = ip * w_phi;
      const double sp = std::sin(phi), cp = std::cos(phi);
      const vec3 x = {a * st * cp, b * st * sp, c * ct};
      const vec3 xt = {a * ct * cp, b * ct * sp, -c * st};
      const vec3 xp = {-a * st * sp, b * st * cp, 0.0};
      const vec3 xtt = {-a * st * cp, -b * st * sp, -c * ct};
      const vec3 xtp = {-a * ct * sp, b * ct * cp, 0.0};
      const vec3 xpp = {-a * st * cp, -b * st * sp, 0.0};
      vec3 normal = {x[0] / (a * a), x[1] / (b * b), x[2] / (c * c)};  // outward
      const double nn = norm(normal);
      normal = {normal[0] / nn, normal[1] / nn, normal[2] / nn};

      const double e1 = dot(xt, xt);
      const double f1 = dot(xt, xp);
      const double g1 = dot(xp, xp);
      // Second fundamental form against the outward normal (divergence
      // convention: the unit sphere gets curvature +1).
      const double l2 = -dot(xtt, normal);
      const double m2 = -dot(xtp, normal);
      const double n2 = -dot(xpp, normal);
      const double det1 = e1 * g1 - f1 * f1;
      const double mean = (e1 * n2 - 2.0 * f1 * m2 + g1 * l2) / det1;  // sum of curvatures
      const double gauss = (l2 * n2 - m2 * m2) / det1;
      const double sum_sq = mean * mean - 2.0 * gauss;
      const double area_el = std::sqrt(det1) * wt * w_phi;
      inv.A1 += area_el;
      inv.A2 += mean * area_el;
      inv.A3 += (13.0 * mean * mean + 2.0 * sum_sq) * area_el;
    }
  }
  return inv;
}

}  // namespace resokit::geometry
