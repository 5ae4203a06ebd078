#pragma once

#include <complex>
#include <span>
#include <vector>

namespace resokit::roots {

struct RootEntry {
  std::complex<double> value;
  int multiplicity = 1;
  double residual = 0.0;  // |p(value)| with the original (unnormalized) coefficients
};

struct RootReport {
  std::vector<RootEntry> roots;
  bool verified = false;
  int iterations = 0;

  long total_multiplicity() const;
};

// Circle `center + radius * e^{i theta}` sampled at `samples` points
// (>= 64 and even).
struct Contour {
  std::complex<double> center;
  double radius = 1.0;
  int samples = 256;
};

struct RootFindOptions {
  double tolerance = 1e-12;       // Aberth step-size stop, relative to 1+|z|
  int max_iterations = 200;
  double cluster_factor = 1e-6;   // multiplicity clustering scale, x (1+|root|)
  int newton_polish_steps = 4;
  // When set, companion-matrix eigenvalues are computed as an independent
  // cross-check; a mismatch clears report.verified.
  bool companion_cross_check = false;
};

// All roots of the polynomial with the given ascending coefficients.
// Aberth–Ehrlich simultaneous iteration from a perturbed-circle start,
// Newton polish, then multiplicity clustering (near-coincident iterates are
// merged only when an argument-principle count around the cluster confirms
// the multiplicity). Throws NonConvergence after max_iterations.
RootReport find_roots(std::span<const std::complex<double>> coeffs,
                      double tolerance = 1e-12,
                      const RootFindOptions& options = {});

// (1/2πi) ∮ p'/p over the contour, rounded to the nearest integer: the
// number of zeros enclosed, with multiplicity. Sampling is doubled until
// consecutive phase steps are unambiguous. Throws ContourTooClose when the
// sampled min|p| / max|p| ratio indicates a zero on or near the contour.
long winding_count(std::span<const std::complex<double>> coeffs, const Contour& contour);

// True iff the enclosing-circle winding count equals the report's total
// multiplicity and each per-root small contour count equals that root's
// multiplicity. Never throws; any mismatch (or an unusable contour) is false.
bool verify_report(std::span<const std::complex<double>> coeffs,
                   const RootReport& report, double enclosing_radius);

// Companion-matrix eigenvalue route (optional cross-check).
std::vector<std::complex<double>> companion_roots(
    std::span<const std::complex<double>> coeffs);

}  // namespace resokit::roots
