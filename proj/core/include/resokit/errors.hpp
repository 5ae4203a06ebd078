#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace resokit {

// Base class for every failure this library reports on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root finder exhausted its iteration budget. Carries the best iterate so
// callers can inspect how far the solve got.
struct NonConvergence : Error {
  NonConvergence(const std::string& what, std::vector<std::complex<double>> best)
      : Error(what), best_iterate(std::move(best)) {}
  std::vector<std::complex<double>> best_iterate;
};

// A winding-number contour passes too close to a zero for the sampled
// integrand to be trustworthy.
struct ContourTooClose : Error {
  using Error::Error;
};

// mode_eigenvalue evaluated at (or numerically on top of) a resonance.
struct PoleAtResonance : Error {
  using Error::Error;
};

// det_S_direct hit l_max before its tail stopping rule fired.
struct TruncationNotReached : Error {
  using Error::Error;
};

// Canonical-product factor evaluated at one of its own zeros.
struct FactorPole : Error {
  using Error::Error;
};

// Phase continuation between consecutive grid points is ambiguous
// (grid too coarse for the c-fit).
struct PhaseUnwrapFailure : Error {
  using Error::Error;
};

// Least-squares basis Gram matrix condition number above the safety gate.
struct IllConditioned : Error {
  using Error::Error;
};

// Panel-doubling refinement of a quadrature failed to converge.
struct QuadratureStall : Error {
  using Error::Error;
};

// Surface-of-revolution profile pinches to zero radius away from the axis.
struct DegenerateProfile : Error {
  using Error::Error;
};

// Geometric invariant that must be positive is not.
struct NonPositiveInvariant : Error {
  using Error::Error;
};

}  // namespace resokit
