#pragma once

#include <complex>
#include <vector>

#include "resokit/polynomial.hpp"

namespace resokit::detail {

// Result of the extended-precision root solve for a polynomial with exact
// Gaussian-rational coefficients.
struct ModeRoots {
  std::vector<std::complex<double>> values;  // rounded to double at the end
  std::vector<int> multiplicities;
  int iterations = 0;
  bool verified = false;  // argument principle: enclosing + per-root contours
};

// Finds all roots of the exact polynomial and certifies them by winding
// counts, working in GMP floating point at a precision that grows with the
// degree. Rounding the coefficients to double destroys the deeper roots of
// the radial polynomials once the degree passes ~25 (their condition number
// grows like 2^(2 deg)), so the solve must happen before any double
// conversion. Throws NonConvergence (best iterate attached, rounded to
// double) when the iteration budget runs out, Error on degenerate input.
//
// `warm_seeds`, when given and no larger than the degree, replaces the
// circle initialization; missing iterates are topped up below the deepest
// seed. Roots of consecutive radial modes nearly interlace, so seeding a
// mode with its predecessor's roots cuts the sweep count several-fold.
ModeRoots exact_poly_roots(const PolyQ& coeffs, int max_iterations,
                           const std::vector<std::complex<double>>* warm_seeds = nullptr);

}  // namespace resokit::detail
