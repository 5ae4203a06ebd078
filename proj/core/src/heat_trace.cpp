#include "resokit/heat_trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "resokit/errors.hpp"
#include "resokit/quadrature.hpp"

namespace resokit::heat {
namespace {

using cd = std::complex<double>;

struct TraceParts {
  double value = 0.0;    // (1/pi) integral of e^{-t lambda^2} Im L over [0, L]
  double residue = 0.0;  // same with Re L: must vanish for -conj-symmetric sets
};

// Shared contour machinery: integrand(nodes) returns L(lambda) per node.
template <class Integrand>
TraceParts integrate_once(double t, double range, double width, int order,
                          const Integrand& integrand) {
  const quad::GaussRule rule = quad::composite_gauss_legendre(0.0, range, width, order);
  const std::vector<cd> values = integrand(rule.nodes);
  TraceParts parts;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double w = rule.weights[i] * std::exp(-t * rule.nodes[i] * rule.nodes[i]);
    parts.value += w * values[i].imag();
    parts.residue += w * values[i].real();
  }
  // The full integral runs over [-L, L]; evenness gives 2x the half-line,
  // and the trace normalization is 1/(2 pi).
  parts.value /= std::numbers::pi;
  parts.residue /= std::numbers::pi;
  return parts;
}

template <class Integrand>
double trace_with_doubling(double t, const QuadratureOptions& options,
                           const Integrand& integrand) {
  if (!(t > 0.0)) throw Error("heat trace requires t > 0");
  const double range = std::ceil(options.range_factor / std::sqrt(t));
  const double width = std::min(1.0, 1.0 / std::sqrt(t));
  const TraceParts coarse = integrate_once(t, range, width, options.order, integrand);
  const TraceParts fine = integrate_once(t, range, width, 2 * options.order, integrand);
  if (std::abs(fine.value - coarse.value) >
      options.relative_tolerance * std::abs(fine.value) + 1e-12) {
    throw QuadratureStall("heat trace: order-doubled quadratures disagree at t=" +
                          std::to_string(t));
  }
  if (std::abs(fine.residue) > 1e-8 * std::abs(fine.value) + 1e-12) {
    throw Error("heat trace: real part of the log-derivative integral is not negligible "
                "(resonance set not -conj-symmetric?)");
  }
  return fine.value;
}

}  // namespace

double heat_trace_resonance(const scattering::CanonicalProductParams& params,
                            double t, const QuadratureOptions& options) {
  const auto integrand = [&params](const std::vector<double>& nodes) {
    std::vector<cd> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out[i] = scattering::log_derivative_det(params, nodes[i]);
    }
    return out;
  };
  double value = trace_with_doubling(t, options, integrand);
  // Real resonances (none for balls) contribute half weight.
  for (const auto& entry : params.resonances.entries) {
    if (std::abs(entry.value) > params.truncation_radius) continue;
    if (std::abs(entry.value.imag()) < 1e-12) {
      const double x = entry.value.real();
      value += 0.5 * static_cast<double>(entry.multiplicity) * std::exp(-t * x * x);
    }
  }
  return value;
}

double heat_trace_modes(int d, double rho, double t, int l_max,
                        radial::BoundaryCondition bc, const QuadratureOptions& options) {
  const auto integrand = [=](const std::vector<double>& lambdas) {
    const int dm = (d - 3) / 2;
    const std::size_t n = lambdas.size();
    std::vector<cd> total(n, cd(0.0, 0.0));
    // Upward ratio recurrence r_m = h_{m-1}(z) / h_m(z) for the outgoing
    // radial functions, seeded with r_0 = i; stable and overflow-free where
    // raw polynomial evaluation is not.
    std::vector<cd> ratio(n, cd(0.0, 1.0));
    int tail_small = 0;
    for (int m = 0;; ++m) {
      const int l = m - dm;
      if (l > l_max) break;
      if (l >= 0) {
        const double weight = static_cast<double>(radial::sh_dim(d, l));
        const double a = l + d - 2;
        double term_max = 0.0, acc_max = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double z = lambdas[i] * rho;
          const cd psi = ratio[i] - cd(0.0, 1.0);
          cd contribution;
          if (bc == radial::BoundaryCondition::Neumann) {
            const cd psip =
                2.0 * ((static_cast<double>(m) - cd(0.0, 1.0) * z) * psi +
                       cd(0.0, 1.0) * static_cast<double>(m)) / z - psi * psi;
            const cd g = cd(0.0, 1.0) * z + z * psi - a;
            const cd npn = psi + (cd(0.0, 1.0) + psi + z * psip) / g;
            contribution = weight * cd(0.0, -2.0) * rho * (1.0 + npn.imag());
          } else {
            contribution = weight * cd(0.0, -2.0) * rho * (1.0 + psi.imag());
          }
          total[i] += contribution;
          term_max = std::max(term_max, std::abs(contribution));
          acc_max = std::max(acc_max, std::abs(total[i]));
        }
        // Mode terms die super-exponentially once l exceeds the largest z.
        if (term_max <= 1e-12 * acc_max) {
          if (++tail_small >= 3) break;
        } else {
          tail_small = 0;
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double z = lambdas[i] * rho;
        ratio[i] = 1.0 / ((2.0 * m + 1.0) / z - ratio[i]);
      }
    }
    return total;
  };
  return trace_with_doubling(t, options, integrand);
}

HeatCoefficients fit_heat_coefficients(const HeatSamples& samples, int d, int n_max) {
  const std::size_t rows = samples.t.size();
  const int cols = n_max + 1;
  if (n_max < 0) throw Error("fit_heat_coefficients: n_max must be >= 0");
  if (samples.value.size() != rows) {
    throw Error("fit_heat_coefficients: t/value size mismatch");
  }
  if (rows < static_cast<std::size_t>(2 * cols)) {
    throw IllConditioned("fit_heat_coefficients: need at least 2(n_max+1) samples");
  }
  double t_lo = samples.t.front(), t_hi = samples.t.front();
  for (const double t : samples.t) {
    if (!(t > 0.0)) throw Error("fit_heat_coefficients: t must be positive");
    t_lo = std::min(t_lo, t);
    t_hi = std::max(t_hi, t);
  }
  if (t_hi / t_lo < std::pow(10.0, 1.5)) {
    throw IllConditioned("fit_heat_coefficients: t-samples must span >= 1.5 decades");
  }

  // Weighted basis relative to the leading power: columns t^{n/2}, right-hand
  // side value * t^{d/2} (i.e. weights t^{d/2} applied to basis t^{(n-d)/2}).
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double t = samples.t[i];
    for (int nn = 0; nn < cols; ++nn) a(static_cast<Eigen::Index>(i), nn) = std::pow(t, 0.5 * nn);
    b(static_cast<Eigen::Index>(i)) = samples.value[i] * std::pow(t, 0.5 * d);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double gram_condition = (smax / smin) * (smax / smin);
  if (!(gram_condition < 1e10)) {
    throw IllConditioned("fit_heat_coefficients: basis Gram condition number " +
                         std::to_string(gram_condition) + " exceeds 1e10");
  }
  const Eigen::VectorXd x = svd.solve(b);
  const Eigen::VectorXd residual = a * x - b;
  const double dof = static_cast<double>(rows) - static_cast<double>(cols);
  const double rms = std::sqrt(residual.squaredNorm() / std::max(1.0, dof));
  const Eigen::MatrixXd covariance = rms * rms * (a.transpose() * a).inverse();

  HeatCoefficients out;
  out.d = d;
  out.residual_rms = rms;
  out.a.resize(static_cast<std::size_t>(cols));
  out.covariance.resize(static_cast<std::size_t>(cols) * cols);
  for (int i = 0; i < cols; ++i) {
    out.a[static_cast<std::size_t>(i)] = x(i);
    for (int j = 0; j < cols; ++j) {
      out.covariance[static_cast<std::size_t>(i) * cols + j] = covariance(i, j);
    }
  }
  return out;
}

std::vector<double> calibration_t_grid(const CalibrationConstants& cal, double rho) {
  if (cal.nt < 1) throw Error("calibration grid needs nt >= 1");
  if (!(cal.t_min_factor > 0.0) || !(cal.t_max_factor > cal.t_min_factor)) {
    throw Error("calibration grid needs 0 < t_min_factor < t_max_factor");
  }
  std::vector<double> out(static_cast<std::size_t>(cal.nt));
  const double scale = rho * rho;
  if (cal.nt == 1) {
    out[0] = cal.t_min_factor * scale;
    return out;
  }
  const double log_ratio = std::log(cal.t_max_factor / cal.t_min_factor);
  for (int i = 0; i < cal.nt; ++i) {
    const double frac = static_cast<double>(i) / (cal.nt - 1);
    out[static_cast<std::size_t>(i)] = cal.t_min_factor * std::exp(log_ratio * frac) * scale;
  }
  return out;
}

HeatSamples heat_samples_from_resonances(const radial::ResonanceSet& resonances,
                                         const CalibrationConstants& cal, double c) {
  scattering::CanonicalProductParams params;
  params.genus = resonances.dimension;
  params.c = c;
  params.resonances = resonances;

  QuadratureOptions qopts;
  qopts.order = cal.quad_order;

  HeatSamples samples;
  samples.method = HeatMethod::resonance_integral;
  samples.t = calibration_t_grid(cal, resonances.radius);
  samples.value.reserve(samples.t.size());
  for (const double t : samples.t) {
    samples.value.push_back(heat_trace_resonance(params, t, qopts));
  }
  return samples;
}

CalibrationConstants calibrate_alphas(const radial::ResonanceSet& resonances,
                                      const CalibrationOptions& options) {
  if (options.n_max < 3) throw Error("calibration needs n_max >= 3");
  CalibrationConstants cal;
  cal.d = resonances.dimension;
  cal.rho_cal = resonances.radius;
  cal.t_min_factor = options.t_min_factor;
  cal.t_max_factor = options.t_max_factor;
  cal.nt = options.nt;
  cal.n_max = options.n_max;
  cal.l_max = resonances.l_max;
  cal.quad_order = options.quad_order;

  // c is held at zero: a real product constant feeds only the t^{-d/2}
  // column, so a_0 absorbs it and a_1..a_3 are unaffected.
  const HeatSamples samples = heat_samples_from_resonances(resonances, cal, 0.0);
  const HeatCoefficients fit = fit_heat_coefficients(samples, cal.d, cal.n_max);
  const geometry::BoundaryInvariants sphere =
      geometry::sphere_invariants(cal.d, resonances.radius, 1);
  cal.alpha1 = fit.a[1] / sphere.A1;
  cal.alpha2 = fit.a[2] / sphere.A2;
  cal.alpha3 = fit.a[3] / sphere.A3;
  return cal;
}

CalibrationConstants calibrate_alphas(int d, const CalibrationOptions& options) {
  const radial::ResonanceSet resonances =
      radial::ball_resonances(d, options.rho_cal, options.l_max);
  return calibrate_alphas(resonances, options);
}

geometry::BoundaryInvariants invariants_from_resonances(
    const radial::ResonanceSet& resonances, const CalibrationConstants& cal) {
  if (cal.n_max < 3) throw Error("invariant recovery needs a calibration with n_max >= 3");
  if (cal.alpha1 == 0.0 || cal.alpha2 == 0.0 || cal.alpha3 == 0.0) {
    throw Error("invariant recovery needs nonzero calibration constants");
  }
  const HeatSamples samples = heat_samples_from_resonances(resonances, cal, 0.0);
  const HeatCoefficients fit =
      fit_heat_coefficients(samples, resonances.dimension, cal.n_max);
  geometry::BoundaryInvariants inv;
  inv.d = resonances.dimension;
  inv.A1 = fit.a[1] / cal.alpha1;
  inv.A2 = fit.a[2] / cal.alpha2;
  inv.A3 = fit.a[3] / cal.alpha3;
  return inv;
}

bool read_alpha_table(const std::string& path, int d, AlphaTableEntry& out) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open alpha table: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    int dim = 0;
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;
    if (row >> dim >> a1 >> a2 >> a3 && dim == d) {
      out.alpha1 = a1;
      out.alpha2 = a2;
      out.alpha3 = a3;
      return true;
    }
  }
  return false;
}

}  // namespace resokit::heat
