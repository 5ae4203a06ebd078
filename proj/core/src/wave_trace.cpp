#include "resokit/wave_trace.hpp"

#include <cmath>

#include "resokit/errors.hpp"

namespace resokit::wave {

std::complex<double> smoothed_wave_trace(const radial::ResonanceSet& resonances,
                                         double t, double eps) {
  const double at = std::abs(t);
  std::complex<double> acc = 0.0;
  for (const auto& entry : resonances.entries) {
    const double norm2 = std::norm(entry.value);
    const double weight = std::exp(-0.5 * eps * eps * norm2);
    acc += static_cast<double>(entry.multiplicity) * weight *
           std::exp(std::complex<double>(0.0, 1.0) * entry.value * at);
  }
  return acc;
}

double regularity_exponent(const radial::ResonanceSet& resonances, double t,
                           const std::vector<double>& eps) {
  if (eps.size() < 2) throw Error("regularity_exponent: need at least two widths");
  // Least-squares slope of log|u_eps| against log(1/eps).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(eps.size());
  for (const double e : eps) {
    if (!(e > 0.0)) throw Error("regularity_exponent: widths must be positive");
    const double mag = std::abs(smoothed_wave_trace(resonances, t, e));
    if (mag == 0.0) return 0.0;
    const double x = std::log(1.0 / e);
    const double y = std::log(mag);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw Error("regularity_exponent: widths must differ");
  return (n * sxy - sx * sy) / denom;
}

radial::ResonanceSet trim_by_depth(const radial::ResonanceSet& resonances,
                                   double imag_cut) {
  radial::ResonanceSet out = resonances;
  out.entries.clear();
  for (const auto& entry : resonances.entries) {
    if (std::abs(entry.value.imag()) <= imag_cut) out.entries.push_back(entry);
  }
  return out;
}

WaveScanResult scan_wave_trace(const radial::ResonanceSet& resonances,
                               const WaveScanConfig& config) {
  if (config.eps.size() < 2) throw Error("wave scan: need at least two widths");
  const radial::ResonanceSet trimmed = trim_by_depth(resonances, config.imag_cut);

  std::vector<double> times = config.times;
  if (times.empty()) {
    if (config.nt < 2 || !(config.t_max > config.t_min)) {
      throw Error("wave scan: invalid time grid");
    }
    times.resize(static_cast<std::size_t>(config.nt));
    for (int i = 0; i < config.nt; ++i) {
      times[static_cast<std::size_t>(i)] =
          config.t_min + (config.t_max - config.t_min) * i / (config.nt - 1);
    }
  }

  WaveScanResult result;
  result.imag_cut = config.imag_cut;
  result.eps = config.eps;
  result.points.reserve(times.size());
  for (const double t : times) {
    WaveScanPoint point;
    point.t = t;
    point.exponent = regularity_exponent(trimmed, t, config.eps);
    point.magnitude.reserve(config.eps.size());
    for (const double e : config.eps) {
      point.magnitude.push_back(std::abs(smoothed_wave_trace(trimmed, t, e)));
    }
    result.points.push_back(point);
  }
  return result;
}

}  // namespace resokit::wave
