#pragma once

#include <string>
#include <vector>

#include "resokit/geometry.hpp"
#include "resokit/scattering.hpp"

namespace resokit::heat {

enum class HeatMethod { resonance_integral, mode_sum };

struct HeatSamples {
  std::vector<double> t;       // increasing positive times (units length^2)
  std::vector<double> value;   // regularized trace values
  HeatMethod method = HeatMethod::resonance_integral;
};

struct QuadratureOptions {
  double range_factor = 8.0;      // integrate |lambda| <= ceil(range_factor/sqrt(t))
  int order = 16;                 // Gauss-Legendre order per panel
  double relative_tolerance = 1e-9;  // order-doubling convergence gate
};

// Regularized heat trace from the canonical-product log-derivative:
//   (1/2πi) ∫_{-L}^{L} e^{-t λ²} (d/dλ) log s(λ) dλ + ½ Σ_{real λ_j} e^{-t λ_j²}
// with L = ceil(range_factor/√t) and composite Gauss–Legendre panels of
// width min(1, 1/√t). Asserts the imaginary residue is <= 1e-8 relative.
// Throws QuadratureStall if order-doubling disagrees beyond tolerance.
double heat_trace_resonance(const scattering::CanonicalProductParams& params,
                            double t, const QuadratureOptions& options = {});

// Independent oracle: the same contour integral with the integrand assembled
// per angular mode from exact closed-form log-derivatives (continued-fraction
// ratio recurrence), summed with sh_dim weights until the per-mode
// contribution falls below 1e-12 of the running total (l_max caps the sum
// for matched-truncation comparisons).
double heat_trace_modes(int d, double rho, double t, int l_max,
                        radial::BoundaryCondition bc = radial::BoundaryCondition::Neumann,
                        const QuadratureOptions& options = {});

struct HeatCoefficients {
  std::vector<double> a;            // a_0 .. a_{n_max}
  std::vector<double> covariance;   // row-major (n_max+1)^2
  int d = 3;
  double residual_rms = 0.0;        // weighted fit residual
  bool a0_c_entangled = true;       // a_0 absorbs the product constant c
};

// Weighted linear least squares in the basis { t^{(n-d)/2} }, weights t^{d/2}
// (i.e. relative to the leading power). Requires >= 2(n_max+1) samples
// spanning >= 1.5 decades. Throws IllConditioned if the basis Gram condition
// number exceeds 1e10.
HeatCoefficients fit_heat_coefficients(const HeatSamples& samples, int d, int n_max = 3);

struct CalibrationConstants {
  double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
  int d = 3;
  // Metadata: the t-grid and truncation the calibration ran with. The t-grid
  // is stored as radius-free factors (t = factor * rho^2) so that invariant
  // recovery at a different radius reuses the same dimensionless grid.
  double rho_cal = 1.0;
  double t_min_factor = 1e-3, t_max_factor = 1e-1;
  int nt = 24;
  int n_max = 3;
  int l_max = 60;
  int quad_order = 16;
};

struct CalibrationOptions {
  double rho_cal = 1.0;
  double t_min_factor = 1e-3, t_max_factor = 1e-1;
  int nt = 24;
  int n_max = 3;
  int l_max = 60;
  int quad_order = 16;
};

// Log-spaced t-grid in [t_min_factor, t_max_factor] * rho^2.
std::vector<double> calibration_t_grid(const CalibrationConstants& cal, double rho);

// Run the resonance -> trace -> fit pipeline on a ball of radius rho_cal and
// divide fitted a_1..a_3 by the closed-form unit-sphere invariants. The
// product constant is held at c = 0: it shifts only the t^{-d/2} column,
// i.e. only the c-entangled a_0 (verified drift of a_1..a_3 is < 1e-6).
CalibrationConstants calibrate_alphas(int d, const CalibrationOptions& options = {});

// Same pipeline on a precomputed resonance set (radius taken from the set).
CalibrationConstants calibrate_alphas(const radial::ResonanceSet& resonances,
                                      const CalibrationOptions& options = {});

// Heat samples for an arbitrary resonance set on the calibration's
// (radius-scaled) t-grid.
HeatSamples heat_samples_from_resonances(const radial::ResonanceSet& resonances,
                                         const CalibrationConstants& cal,
                                         double c = 0.0);

// End-to-end composition: heat samples on the calibration's t-grid (scaled to
// this set's radius), coefficient fit, then A_n = a_n / alpha_n. Requires
// cal.n_max >= 3.
geometry::BoundaryInvariants invariants_from_resonances(
    const radial::ResonanceSet& resonances, const CalibrationConstants& cal);

// Optional literature cross-check: read "d alpha1 alpha2 alpha3" lines from a
// key-value text file; returns false if the dimension is not listed.
struct AlphaTableEntry {
  double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
};
bool read_alpha_table(const std::string& path, int d, AlphaTableEntry& out);

}  // namespace resokit::heat
