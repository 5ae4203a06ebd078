#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>

#include "resokit/radial_model.hpp"

namespace resokit::scattering {

// Canonical (Weierstrass) factor of genus d:
//   E(z) = (1 - z) exp(sum_{j=1}^{d} z^j / j).
// For |z| < 0.5 it is evaluated through the tail series
//   log E(z) = -sum_{j >= d+1} z^j / j
// so that E(z) - 1 = O(z^{d+1}) is computed without cancellation.
std::complex<double> weierstrass_E(std::complex<double> z, int genus);
std::complex<double> log_weierstrass_E(std::complex<double> z, int genus);

// Scattering eigenvalue of one angular mode for the ball of radius rho:
//   s_l(lambda) = u · e^{-2 i z} · conj_poly(z) / poly(z),  z = lambda · rho,
// where poly is the mode's radial polynomial, conj_poly has conjugated
// coefficients, and the unit u ∈ {±1, ±i} is fixed by s_l(0+) = 1.
// Throws PoleAtResonance when lambda sits on a mode resonance.
std::complex<double> mode_eigenvalue(int d, double rho, int l,
                                     std::complex<double> lambda,
                                     radial::BoundaryCondition bc =
                                         radial::BoundaryCondition::Neumann);

// Full determinant as the product over modes of s_l^{sh_dim(d,l)},
// truncated when |s_l - 1| < 1e-14 for three consecutive modes.
// Throws TruncationNotReached if l_max is hit first.
std::complex<double> det_S_direct(int d, double rho, std::complex<double> lambda,
                                  int l_max = 60,
                                  radial::BoundaryCondition bc =
                                      radial::BoundaryCondition::Neumann);

// Parameters of the canonical-product representation
//   s(lambda) = e^{i c lambda^d} Π_j [ E(-lambda/lambda_j) / E(lambda/lambda_j) ]^{mult_j}.
struct CanonicalProductParams {
  int genus = 3;                      // the odd dimension d
  double c = 0.0;                     // real constant, units length^d
  radial::ResonanceSet resonances;
  double truncation_radius = std::numeric_limits<double>::infinity();
};

// Product over the resonances with |lambda_j| <= truncation_radius.
// Throws FactorPole if lambda coincides with a kept resonance.
std::complex<double> det_S_product(const CanonicalProductParams& params,
                                   std::complex<double> lambda);

// d/dlambda log s at real lambda:
//   i c d lambda^{d-1} + sum_j mult_j · 2 lambda^{d+1} / (lambda_j^d (lambda_j^2 - lambda^2)),
// using d/dz log E(z) = -z^d / (1 - z). Purely imaginary (up to roundoff)
// for -conj-symmetric resonance sets.
std::complex<double> log_derivative_det(const CanonicalProductParams& params,
                                        double lambda);

// Fit the single real constant c by scalar least squares on
//   arg( direct(lambda) / product_{c=0}(lambda) ) ≈ c · lambda^d
// over an increasing real grid, with phase unwrapping between neighbors.
// Throws PhaseUnwrapFailure when consecutive unwrapped phases jump by >= 0.9π.
double fit_constant_c(const radial::ResonanceSet& resonances,
                      const std::function<std::complex<double>(double)>& direct_evaluator,
                      std::span<const double> lambda_grid,
                      double truncation_radius = std::numeric_limits<double>::infinity());

}  // namespace resokit::scattering
