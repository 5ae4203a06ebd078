#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "resokit/polynomial.hpp"
#include "resokit/polyroot.hpp"

namespace resokit::radial {

enum class BoundaryCondition { Neumann, Dirichlet };

const char* to_string(BoundaryCondition bc);

// Polynomial whose roots, divided by the ball radius, are the mode-l
// resonances. Coefficients are exact Gaussian rationals, ascending degree,
// normalized so the leading coefficient is i (Neumann) or 1 (Dirichlet).
struct RadialPolynomial {
  int dimension = 3;
  int mode = 0;
  BoundaryCondition bc = BoundaryCondition::Neumann;
  PolyQ coefficients;

  int degree() const { return poly_degree(coefficients); }
  std::vector<std::complex<double>> complex_coefficients() const {
    return to_complex_coeffs(coefficients);
  }
};

// Exact construction. With m = l + (d-3)/2,
//   T(z) = sum_{k=0}^{m} i^k (m+k)! / (k! (m-k)! 2^k) z^{m-k}
// is the Dirichlet polynomial; the Neumann polynomial is
//   N(z) = i z T(z) + z T'(z) - a T(z),  a = l + d - 2.
// Throws Error for even or < 3 dimension, negative mode.
RadialPolynomial radial_polynomial(int d, int l, BoundaryCondition bc);

// Dimension of degree-l spherical harmonics on S^{d-1}; the multiplicity
// weight of every mode-l radial root.
std::int64_t sh_dim(int d, int l);

struct Resonance {
  std::complex<double> value;       // wavenumber units (1/length)
  std::int64_t multiplicity = 1;
  int mode = 0;                     // angular mode l this root came from
};

struct ResonanceSet {
  int dimension = 3;
  double radius = 1.0;
  BoundaryCondition bc = BoundaryCondition::Neumann;
  int l_max = 0;
  std::vector<Resonance> entries;

  std::int64_t total_multiplicity() const;
};

// Roots of radial_polynomial(d, l, bc) for every l <= l_max, scaled by 1/rho,
// with multiplicity (root multiplicity) x sh_dim(d, l). Entries are polished
// and residual-checked; failures propagate as NonConvergence with the mode
// attached. Deterministic ordering: by mode, then real part, then imag part.
ResonanceSet ball_resonances(int d, double rho, int l_max,
                             BoundaryCondition bc = BoundaryCondition::Neumann,
                             const roots::RootFindOptions& options = {});

// Covariance under dilation: every value divided by `factor`, radius
// multiplied by `factor`. (B(rho) resonances = B(1) resonances / rho.)
ResonanceSet scale_resonances(const ResonanceSet& set, double factor);

}  // namespace resokit::radial
