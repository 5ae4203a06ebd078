#include "resokit/polynomial.hpp"

#include <cmath>
#include <cstddef>

#include "resokit/errors.hpp"

namespace resokit {

GaussQ unit_i_power(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

int poly_degree(const PolyQ& p) {
  for (std::size_t k = p.size(); k > 0; --k) {
    if (!p[k - 1].is_zero()) return static_cast<int>(k - 1);
  }
  return -1;
}

PolyQ poly_derivative(const PolyQ& p) {
  if (p.size() <= 1) return {};
  PolyQ dp(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) {
    mpq_class f(static_cast<long>(k));
    dp[k - 1] = GaussQ{p[k].re * f, p[k].im * f};
  }
  return dp;
}

PolyQ poly_conjugate(const PolyQ& p) {
  PolyQ q(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) q[k] = p[k].conj();
  return q;
}

std::complex<double> to_complex(const GaussQ& q) {
  const double re = q.re.get_d();
  const double im = q.im.get_d();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error("exact coefficient exceeds double range; reduce the mode number");
  }
  return {re, im};
}

std::vector<std::complex<double>> to_complex_coeffs(const PolyQ& p) {
  std::vector<std::complex<double>> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = to_complex(p[k]);
  return out;
}

std::complex<double> poly_eval(const std::vector<std::complex<double>>& coeffs,
                               std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = coeffs.size(); k > 0; --k) acc = acc * z + coeffs[k - 1];
  return acc;
}

std::pair<std::complex<double>, std::complex<double>> poly_eval_with_derivative(
    const std::vector<std::complex<double>>& coeffs, std::complex<double> z) {
  std::complex<double> p = 0.0, dp = 0.0;
  for (std::size_t k = coeffs.size(); k > 0; --k) {
    dp = dp * z + p;
    p = p * z + coeffs[k - 1];
  }
  return {p, dp};
}

double poly_residual_scale(const std::vector<std::complex<double>>& coeffs,
                           std::complex<double> z) {
  double max_c = 0.0;
  int deg = -1;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double a = std::abs(coeffs[k]);
    if (a > 0.0) deg = static_cast<int>(k);
    max_c = std::max(max_c, a);
  }
  if (deg < 0) return 0.0;
  return max_c * std::pow(1.0 + std::abs(z), deg);
}

double poly_abs_eval(const std::vector<std::complex<double>>& coeffs,
                     double abs_z) {
  double s = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    s = s * abs_z + std::abs(coeffs[k]);
  }
  return s;
}

}  // namespace resokit
