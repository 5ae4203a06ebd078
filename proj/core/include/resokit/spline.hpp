#pragma once

#include <cstddef>
#include <vector>

namespace resokit::geometry {

// Cubic spline interpolant over strictly increasing knots.
//
// Open curves use not-a-knot end conditions (third derivative continuous at
// the first/last interior knot), which restores full O(h^4) accuracy at the
// endpoints where natural conditions would force a spurious s'' = 0.
// Periodic splines assume y.front() == y.back() and close the tridiagonal
// system cyclically (Sherman–Morrison, still O(N)).
class CubicSpline {
 public:
  enum class Boundary { not_a_knot, periodic };

  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y,
              Boundary boundary = Boundary::not_a_knot);

  double operator()(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& knots() const { return x_; }

 private:
  std::size_t segment(double t) const;

  std::vector<double> x_;
  // Per-segment coefficients: y(t) = a + b*dt + c*dt^2 + d*dt^3, dt = t - x_[i].
  std::vector<double> a_, b_, c_, d_;
};

}  // namespace resokit::geometry
