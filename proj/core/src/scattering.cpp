#include "resokit/scattering.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "resokit/errors.hpp"
#include "resokit/polynomial.hpp"

namespace resokit::scattering {
namespace {

using cd = std::complex<double>;

// The Hankel prefactor contributes an unknown power of i; fix it by forcing
// s_l -> 1 as lambda -> 0+ and snapping 1/s(eps) to the nearest unit.
cd unit_normalization(const std::vector<cd>& co, const std::vector<cd>& cob) {
  constexpr double eps = 1e-3;
  const cd sigma = std::exp(cd(0.0, -2.0 * eps)) * poly_eval(cob, eps) / poly_eval(co, eps);
  const cd u = 1.0 / sigma;
  static const cd units[4] = {cd(1, 0), cd(-1, 0), cd(0, 1), cd(0, -1)};
  cd best = units[0];
  double best_score = (u / units[0]).real();
  for (int k = 1; k < 4; ++k) {
    const double score = (u / units[k]).real();
    if (score > best_score) {
      best_score = score;
      best = units[k];
    }
  }
  return best;
}

}  // namespace

cd log_weierstrass_E(cd z, int genus) {
  if (genus < 1) throw Error("weierstrass_E: genus must be >= 1");
  if (std::abs(z) < 0.5) {
    // log E(z) = -sum_{j >= genus+1} z^j / j; |z| < 0.5 makes the tail after
    // 60 terms < 1e-18, so E - 1 = O(z^{genus+1}) carries no cancellation.
    cd acc = 0.0;
    cd zj = std::pow(z, genus + 1);
    for (int j = genus + 1; j <= 400; ++j) {
      const cd term = zj / static_cast<double>(j);
      acc -= term;
      if (std::abs(term) < 1e-18) break;
      zj *= z;
    }
    return acc;
  }
  cd partial = 0.0;
  cd zj = z;
  for (int j = 1; j <= genus; ++j) {
    partial += zj / static_cast<double>(j);
    zj *= z;
  }
  return std::log(1.0 - z) + partial;
}

cd weierstrass_E(cd z, int genus) {
  if (genus < 1) throw Error("weierstrass_E: genus must be >= 1");
  if (std::abs(z) < 0.5) return std::exp(log_weierstrass_E(z, genus));
  cd partial = 0.0;
  cd zj = z;
  for (int j = 1; j <= genus; ++j) {
    partial += zj / static_cast<double>(j);
    zj *= z;
  }
  return (1.0 - z) * std::exp(partial);
}

cd mode_eigenvalue(int d, double rho, int l, cd lambda, radial::BoundaryCondition bc) {
  if (!(rho > 0.0)) throw Error("mode_eigenvalue: radius must be positive");
  const radial::RadialPolynomial poly = radial::radial_polynomial(d, l, bc);
  const std::vector<cd> co = poly.complex_coefficients();
  const std::vector<cd> cob = to_complex_coeffs(poly_conjugate(poly.coefficients));

  const cd z = lambda * rho;
  const cd den = poly_eval(co, z);
  // Relative to sum_k |c_k||z|^k, a dip to 1e-13 only happens within a few
  // ulp of an actual zero; real lambda never comes that close, since every
  // resonance sits at a finite depth below the axis.
  if (std::abs(den) < 1e-13 * poly_abs_eval(co, std::abs(z))) {
    throw PoleAtResonance("mode_eigenvalue: lambda is numerically on a mode-" +
                          std::to_string(l) + " resonance");
  }
  const cd num = poly_eval(cob, z);
  const cd u = unit_normalization(co, cob);
  return u * std::exp(cd(0.0, -2.0) * z) * num / den;
}

cd det_S_direct(int d, double rho, cd lambda, int l_max, radial::BoundaryCondition bc) {
  cd prod = 1.0;
  int consecutive = 0;
  for (int l = 0; l <= l_max; ++l) {
    const cd s = mode_eigenvalue(d, rho, l, lambda, bc);
    prod *= std::pow(s, static_cast<double>(radial::sh_dim(d, l)));
    if (std::abs(s - 1.0) < 1e-14) {
      if (++consecutive >= 3) return prod;
    } else {
      consecutive = 0;
    }
  }
  throw TruncationNotReached("det_S_direct: mode tail still active at l_max=" +
                             std::to_string(l_max) + "; raise l_max");
}

cd det_S_product(const CanonicalProductParams& params, cd lambda) {
  cd acc = cd(0.0, 1.0) * params.c * std::pow(lambda, params.genus);
  for (const auto& entry : params.resonances.entries) {
    const cd lj = entry.value;
    if (std::abs(lj) > params.truncation_radius) continue;
    if (std::abs(lambda - lj) < 1e-12 * (1.0 + std::abs(lj))) {
      throw FactorPole("det_S_product: lambda coincides with a kept resonance");
    }
    acc += static_cast<double>(entry.multiplicity) *
           (log_weierstrass_E(-lambda / lj, params.genus) -
            log_weierstrass_E(lambda / lj, params.genus));
  }
  return std::exp(acc);
}

cd log_derivative_det(const CanonicalProductParams& params, double lambda) {
  const int d = params.genus;
  cd acc = cd(0.0, 1.0) * (params.c * d * std::pow(lambda, d - 1));
  const double lpow = std::pow(lambda, d + 1);
  for (const auto& entry : params.resonances.entries) {
    const cd lj = entry.value;
    if (std::abs(lj) > params.truncation_radius) continue;
    const cd denom = lj * lj - lambda * lambda;
    if (std::abs(denom) < 1e-14 * (1.0 + std::abs(lj * lj))) {
      throw FactorPole("log_derivative_det: lambda numerically on a resonance");
    }
    acc += static_cast<double>(entry.multiplicity) * 2.0 * lpow / (std::pow(lj, d) * denom);
  }
  return acc;
}

double fit_constant_c(const radial::ResonanceSet& resonances,
                      const std::function<cd(double)>& direct_evaluator,
                      std::span<const double> lambda_grid, double truncation_radius) {
  if (lambda_grid.empty()) throw Error("fit_constant_c: empty grid");
  CanonicalProductParams zero_c;
  zero_c.genus = resonances.dimension;
  zero_c.c = 0.0;
  zero_c.resonances = resonances;
  zero_c.truncation_radius = truncation_radius;

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const int d = resonances.dimension;
  double prev = 0.0;
  double num = 0.0, den = 0.0;
  for (const double lambda : lambda_grid) {
    const cd direct = direct_evaluator(lambda);
    const cd product = det_S_product(zero_c, lambda);
    double theta = std::arg(direct / product);
    theta -= two_pi * std::round((theta - prev) / two_pi);
    if (std::abs(theta - prev) >= 0.9 * std::numbers::pi) {
      throw PhaseUnwrapFailure("fit_constant_c: phase step ambiguous; refine the lambda grid");
    }
    prev = theta;
    num += theta * std::pow(lambda, d);
    den += std::pow(lambda, 2 * d);
  }
  if (!(den > 0.0)) throw Error("fit_constant_c: degenerate grid");
  return num / den;
}

}  // namespace resokit::scattering
