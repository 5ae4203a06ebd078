#include "resokit/spline.hpp"

#include <algorithm>
#include <cmath>

#include "resokit/errors.hpp"

namespace resokit::geometry {
namespace {

// Thomas algorithm for a tridiagonal system; diag/rhs are consumed.
std::vector<double> solve_tridiagonal(const std::vector<double>& sub,
                                      std::vector<double> diag,
                                      const std::vector<double>& super,
                                      std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * super[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i > 0; --i) {
    x[i - 1] = (rhs[i - 1] - super[i - 1] * x[i]) / diag[i - 1];
  }
  return x;
}

// Cyclic tridiagonal (corner entries A[0][n-1] = beta, A[n-1][0] = alpha)
// via the Sherman-Morrison rank-one update: two Thomas solves, still O(n).
std::vector<double> solve_cyclic(const std::vector<double>& sub,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& super,
                                 double alpha, double beta,
                                 const std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  const double gamma = -diag[0];
  std::vector<double> diag2 = diag;
  diag2[0] -= gamma;
  diag2[n - 1] -= alpha * beta / gamma;
  std::vector<double> x = solve_tridiagonal(sub, diag2, super, rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  const std::vector<double> z = solve_tridiagonal(sub, diag2, super, u);
  const double factor =
      (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= factor * z[i];
  return x;
}

}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y, Boundary boundary)
    : x_(std::move(x)) {
  const std::size_t n = x_.size();
  if (y.size() != n) throw Error("cubic spline: knot/value size mismatch");
  const std::size_t min_points = boundary == Boundary::periodic ? 4 : 4;
  if (n < min_points) throw Error("cubic spline: need at least 4 points");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw Error("cubic spline: knots must strictly increase");
  }

  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

  // Solve for the second derivatives ("moments") M_i.
  std::vector<double> moments(n);
  if (boundary == Boundary::periodic) {
    if (std::abs(y.front() - y.back()) >
        1e-12 * (1.0 + std::abs(y.front()) + std::abs(y.back()))) {
      throw Error("periodic spline: first and last values must coincide");
    }
    // Unknowns M_0..M_{K-1} on the cycle (M_K = M_0), K = n-1.
    const std::size_t k = n - 1;
    std::vector<double> sub(k), diag(k), super(k), rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t prev = (i == 0) ? k - 1 : i - 1;
      sub[i] = h[prev] / 6.0;
      diag[i] = (h[prev] + h[i]) / 3.0;
      super[i] = h[i] / 6.0;
      const double y_prev = (i == 0) ? y[k - 1] : y[i - 1];
      rhs[i] = (y[i + 1] - y[i]) / h[i] - (y[i] - y_prev) / h[prev];
    }
    const std::vector<double> m =
        solve_cyclic(sub, diag, super, /*alpha=*/h[k - 1] / 6.0,
                     /*beta=*/h[k - 1] / 6.0, rhs);
    for (std::size_t i = 0; i < k; ++i) moments[i] = m[i];
    moments[k] = m[0];
  } else {
    // Not-a-knot: third derivative continuous across x_1 and x_{n-2}.
    // Interior moment equations for i = 1..n-2, with M_0 and M_{n-1}
    // eliminated through
    //   M_0 = (1 + h_0/h_1) M_1 - (h_0/h_1) M_2,
    //   M_{n-1} = (1 + h_{n-2}/h_{n-3}) M_{n-2} - (h_{n-2}/h_{n-3}) M_{n-3}.
    const std::size_t k = n - 2;  // unknowns M_1..M_{n-2}
    std::vector<double> sub(k, 0.0), diag(k, 0.0), super(k, 0.0), rhs(k);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      rhs[i - 1] = (y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const std::size_t row = i - 1;
      double lower = h[i - 1] / 6.0;
      double center = (h[i - 1] + h[i]) / 3.0;
      double upper = h[i] / 6.0;
      if (i == 1) {
        const double r = h[0] / h[1];
        center += lower * (1.0 + r);
        upper -= lower * r;
        lower = 0.0;
      }
      if (i + 2 == n) {
        const double r = h[n - 2] / h[n - 3];
        center += upper * (1.0 + r);
        lower -= upper * r;
        upper = 0.0;
      }
      sub[row] = lower;
      diag[row] = center;
      super[row] = upper;
    }
    const std::vector<double> m = solve_tridiagonal(sub, diag, super, rhs);
    for (std::size_t i = 0; i < k; ++i) moments[i + 1] = m[i];
    moments[0] = (1.0 + h[0] / h[1]) * moments[1] - (h[0] / h[1]) * moments[2];
    moments[n - 1] = (1.0 + h[n - 2] / h[n - 3]) * moments[n - 2] -
                     (h[n - 2] / h[n - 3]) * moments[n - 3];
  }

  a_.resize(n - 1);
  b_.resize(n - 1);
  c_.resize(n - 1);
  d_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a_[i] = y[i];
    b_[i] = (y[i + 1] - y[i]) / h[i] - h[i] * (2.0 * moments[i] + moments[i + 1]) / 6.0;
    c_[i] = moments[i] / 2.0;
    d_[i] = (moments[i + 1] - moments[i]) / (6.0 * h[i]);
  }
}

std::size_t CubicSpline::segment(double t) const {
  if (t <= x_.front()) return 0;
  if (t >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double CubicSpline::operator()(double t) const {
  const std::size_t i = segment(t);
  const double dt = t - x_[i];
  return a_[i] + dt * (b_[i] + dt * (c_[i] + dt * d_[i]));
}

double CubicSpline::derivative(double t) const {
  const std::size_t i = segment(t);
  const double dt = t - x_[i];
  return b_[i] + dt * (2.0 * c_[i] + dt * 3.0 * d_[i]);
}

double CubicSpline::second_derivative(double t) const {
  const std::size_t i = segment(t);
  const double dt = t - x_[i];
  return 2.0 * c_[i] + 6.0 * d_[i] * dt;
}

}  // namespace resokit::geometry
