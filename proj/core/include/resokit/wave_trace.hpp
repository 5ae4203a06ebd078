#pragma once

#include <complex>
#include <vector>

#include "resokit/radial_model.hpp"

namespace resokit::wave {

// Gaussian-smoothed wave trace from a finite resonance set:
//   u_eps(t) = sum_j mult_j exp(i lambda_j |t|) exp(-eps² |lambda_j|² / 2)
// Sign convention: resonances live in the lower half plane, so Im lambda < 0
// damps the sum as |t| grows.
std::complex<double> smoothed_wave_trace(const radial::ResonanceSet& resonances,
                                         double t, double eps);

struct WaveScanConfig {
  // Depth trim: keep resonances with |Im lambda| <= imag_cut. The shallow
  // cloud carries the high-multiplicity large-|lambda| population that
  // dominates the t -> 0 singularity; trimming the deep tail caps the
  // exp(|Im lambda| t) growth that would otherwise swamp long times.
  double imag_cut = 6.0;
  // Widths for the regularity-exponent regression (log|u| vs log(1/eps)).
  std::vector<double> eps = {0.012, 0.008, 0.005};
  std::vector<double> times;  // scan instants; empty = linspace below
  double t_min = 0.01, t_max = 4.0;
  int nt = 64;
};

struct WaveScanPoint {
  double t = 0.0;
  double exponent = 0.0;           // d log|u_eps| / d log(1/eps), LLS slope
  std::vector<double> magnitude;   // |u_eps(t)| per eps, config order
};

struct WaveScanResult {
  std::vector<WaveScanPoint> points;
  double imag_cut = 0.0;
  std::vector<double> eps;
};

// Least-squares slope of log|u_eps(t)| against log(1/eps). A genuine
// singularity of the wave trace at t shows up as a positive exponent (the
// smoothed peak grows as eps shrinks); at regular times the exponent is
// near zero. |u| = 0 at any width yields exponent 0 for that point.
double regularity_exponent(const radial::ResonanceSet& resonances, double t,
                           const std::vector<double>& eps);

WaveScanResult scan_wave_trace(const radial::ResonanceSet& resonances,
                               const WaveScanConfig& config = {});

// Filtered copy with |Im lambda| <= imag_cut.
radial::ResonanceSet trim_by_depth(const radial::ResonanceSet& resonances,
                                   double imag_cut);

}  // namespace resokit::wave
