#include "resokit/polyroot.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "resokit/errors.hpp"
#include "resokit/polynomial.hpp"

namespace resokit::roots {
namespace {

using cd = std::complex<double>;

std::vector<cd> trimmed(std::span<const cd> coeffs) {
  std::vector<cd> c(coeffs.begin(), coeffs.end());
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  return c;
}

std::vector<cd> make_monic(std::vector<cd> c) {
  const cd lead = c.back();
  for (auto& x : c) x /= lead;
  c.back() = 1.0;
  return c;
}

// Upper bound on |root| for a monic polynomial: the smaller of the Cauchy
// bound 1 + max|a_k| and the Fujiwara bound 2 max_k |a_{n-k}|^{1/k} (with the
// customary a_0/2 in the last term). Both are proven enclosures; the Cauchy
// bound alone is astronomically loose when coefficients grow factorially.
double root_bound(const std::vector<cd>& m) {
  const std::size_t n = m.size() - 1;
  double cauchy = 0.0;
  for (std::size_t k = 0; k < n; ++k) cauchy = std::max(cauchy, std::abs(m[k]));
  cauchy += 1.0;
  double fujiwara = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double a = std::abs(m[n - k]);
    if (k == n) a *= 0.5;
    if (a > 0.0) fujiwara = std::max(fujiwara, std::pow(a, 1.0 / static_cast<double>(k)));
  }
  fujiwara *= 2.0;
  return std::min(cauchy, fujiwara);
}

struct Cluster {
  cd centroid;
  int count = 0;
  double spread = 0.0;  // max member distance from the centroid
};

// Single-linkage grouping of points at the given relative distance scale.
std::vector<std::vector<int>> link_within(const std::vector<cd>& pts,
                                          double factor) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double scale =
          factor * (1.0 + std::max(std::abs(pts[i]), std::abs(pts[j])));
      if (std::abs(pts[i] - pts[j]) <= scale) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> group_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (group_of[r] < 0) {
      group_of[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[r]].push_back(i);
  }
  return groups;
}

Cluster build_cluster(const std::vector<cd>& pts, const std::vector<int>& idx) {
  Cluster c;
  cd sum = 0.0;
  for (int i : idx) sum += pts[i];
  c.centroid = sum / static_cast<double>(idx.size());
  c.count = static_cast<int>(idx.size());
  for (int i : idx) c.spread = std::max(c.spread, std::abs(pts[i] - c.centroid));
  return c;
}

// Winding count that reports failure instead of throwing (merge heuristics
// must stay silent).
bool try_winding(const std::vector<cd>& coeffs, cd center, double radius,
                 long& count) {
  if (!(radius > 0.0)) return false;
  try {
    count = winding_count(coeffs, Contour{center, radius, 256});
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

long RootReport::total_multiplicity() const {
  long total = 0;
  for (const auto& r : roots) total += r.multiplicity;
  return total;
}

long winding_count(std::span<const cd> coeffs, const Contour& contour) {
  const std::vector<cd> c = trimmed(coeffs);
  if (c.empty()) throw Error("winding_count: zero polynomial");
  if (c.size() == 1) return 0;
  if (!(contour.radius > 0.0)) throw Error("winding_count: radius must be positive");

  int samples = std::max(contour.samples, 64);
  samples += samples % 2;
  constexpr int kMaxSamples = 1 << 20;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double deg = static_cast<double>(c.size() - 1);
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  while (true) {
    std::vector<cd> vals(samples);
    bool too_close = false;
    for (int k = 0; k < samples; ++k) {
      const double th = kTwoPi * k / samples;
      const cd z = contour.center + contour.radius * cd(std::cos(th), std::sin(th));
      vals[k] = poly_eval(c, z);
      // Roundoff floor: Horner's absolute error is ~2 deg eps sum_k|c_k||z|^k,
      // so values within a few times that bound carry untrustworthy phases.
      if (std::abs(vals[k]) <= 8.0 * deg * kEps * poly_abs_eval(c, std::abs(z))) {
        too_close = true;
        break;
      }
    }
    if (too_close) {
      throw ContourTooClose("winding_count: sampled |p| at the roundoff floor (zero on or near the contour)");
    }

    bool ambiguous = false;
    double total = 0.0;
    for (int k = 0; k < samples; ++k) {
      const double step = std::arg(vals[(k + 1) % samples] / vals[k]);
      if (std::abs(step) > 0.5 * std::numbers::pi) {
        ambiguous = true;
        break;
      }
      total += step;
    }
    if (!ambiguous) return std::lround(total / kTwoPi);
    if (samples >= kMaxSamples) {
      throw ContourTooClose("winding_count: phase steps stay ambiguous at the sample cap (zero too near the contour)");
    }
    samples *= 2;
  }
}

RootReport find_roots(std::span<const cd> coeffs, double tolerance,
                      const RootFindOptions& options) {
  const std::vector<cd> original = trimmed(coeffs);
  if (original.size() < 2) {
    if (original.empty()) throw Error("find_roots: zero polynomial");
    RootReport empty;
    empty.verified = true;  // a nonzero constant has no roots, vacuously correct
    return empty;
  }
  const std::vector<cd> m = make_monic(original);
  const std::size_t n = m.size() - 1;
  const double tol = std::min(tolerance, options.tolerance);

  // --- Aberth–Ehrlich simultaneous iteration -------------------------------
  const double radius = std::max(root_bound(m), 1e-3);
  std::vector<cd> z(n);
  constexpr double kRotation = 0.61803398874989485;  // irrational: breaks symmetry locks
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + kRotation;
    z[k] = radius * cd(std::cos(th), std::sin(th));
  }

  int used = 0;
  bool converged = false;
  const double settle_scale =
      4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  while (used < options.max_iterations && !converged) {
    ++used;
    converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [p, dp] = poly_eval_with_derivative(m, z[i]);
      // Settled: |p| is below the Horner roundoff bound, so the iterate is as
      // accurate as this coefficient representation permits; further steps
      // would only chase evaluation noise.
      if (std::abs(p) <= settle_scale * poly_abs_eval(m, std::abs(z[i]))) continue;
      if (std::abs(dp) == 0.0) {
        // Stationary point: nudge off it; the next sweep recovers.
        z[i] += 1e-6 * (1.0 + std::abs(z[i]));
        converged = false;
        continue;
      }
      const cd w = p / dp;
      cd repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        cd diff = z[i] - z[j];
        if (std::abs(diff) == 0.0) diff = 1e-300;
        repulsion += 1.0 / diff;
      }
      const cd denom = 1.0 - w * repulsion;
      const cd step = (std::abs(denom) < 1e-300) ? w : w / denom;
      z[i] -= step;
      if (std::abs(step) > tol * (1.0 + std::abs(z[i]))) converged = false;
    }
  }
  if (!converged) {
    throw NonConvergence("find_roots: Aberth iteration exhausted its budget", z);
  }

  // --- Newton polish (kept only when the residual does not grow) -----------
  for (auto& zi : z) {
    for (int s = 0; s < options.newton_polish_steps; ++s) {
      const auto [p, dp] = poly_eval_with_derivative(m, zi);
      if (!(std::abs(dp) > 0.0)) break;
      const cd cand = zi - p / dp;
      if (std::abs(poly_eval(m, cand)) <= std::abs(p)) {
        zi = cand;
      } else {
        break;
      }
    }
  }

  // --- Multiplicity clustering ----------------------------------------------
  // Stage 1: iterates within the tight relative radius are one root.
  std::vector<Cluster> clusters;
  for (const auto& group : link_within(z, options.cluster_factor)) {
    clusters.push_back(build_cluster(z, group));
  }

  // Stage 2: a multiple root scatters its iterates over a radius ~ eps^{1/k},
  // far beyond stage 1. Candidate groups (within 100x the stage-1 scale) are
  // merged only when (a) at least one member fails its own argument-principle
  // check, and (b) the count around the joint centroid equals the combined
  // multiplicity. Nearby simple roots pass (a) individually and stay separate.
  const double stage2 = 100.0 * options.cluster_factor;
  std::vector<cd> centroids(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) centroids[i] = clusters[i].centroid;
  std::vector<Cluster> merged;
  for (const auto& group : link_within(centroids, stage2)) {
    if (group.size() == 1) {
      merged.push_back(clusters[group[0]]);
      continue;
    }
    double min_outside = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (std::find(group.begin(), group.end(), static_cast<int>(j)) != group.end()) continue;
      for (int i : group) {
        min_outside = std::min(min_outside, std::abs(centroids[j] - centroids[i]));
      }
    }

    bool all_members_verify = true;
    for (int i : group) {
      double nearest = min_outside;
      for (int j : group) {
        if (j != i) nearest = std::min(nearest, std::abs(centroids[i] - centroids[j]));
      }
      long count = 0;
      if (!try_winding(m, centroids[i], 0.45 * nearest, count) ||
          count != clusters[i].count) {
        all_members_verify = false;
        break;
      }
    }
    if (all_members_verify) {
      for (int i : group) merged.push_back(clusters[i]);
      continue;
    }

    Cluster joint;
    cd sum = 0.0;
    for (int i : group) {
      sum += clusters[i].centroid * static_cast<double>(clusters[i].count);
      joint.count += clusters[i].count;
    }
    joint.centroid = sum / static_cast<double>(joint.count);
    for (int i : group) {
      joint.spread = std::max(joint.spread, std::abs(clusters[i].centroid - joint.centroid) +
                                                clusters[i].spread);
    }
    // Near a k-fold root the sampled |p| grows like r^k, so when the first
    // contour sits at the roundoff floor, doubling the radius a few times
    // lifts it clear; the cap keeps every outside root excluded.
    const double cap = std::isfinite(min_outside)
                           ? 0.45 * min_outside
                           : std::numeric_limits<double>::infinity();
    double r = std::max(10.0 * joint.spread,
                        10.0 * options.cluster_factor * (1.0 + std::abs(joint.centroid)));
    r = std::min(r, cap);
    bool merge_confirmed = false;
    for (int attempt = 0; attempt < 6; ++attempt) {
      long count = 0;
      if (try_winding(m, joint.centroid, r, count)) {
        merge_confirmed = (count == joint.count);
        if (merge_confirmed || count > joint.count) break;
      }
      if (r >= cap) break;
      r = std::min(2.0 * r, cap);
    }
    if (merge_confirmed) {
      merged.push_back(joint);
    } else {
      for (int i : group) merged.push_back(clusters[i]);
    }
  }

  RootReport report;
  report.iterations = used;
  for (const auto& c : merged) {
    RootEntry entry;
    entry.value = c.centroid;
    entry.multiplicity = c.count;
    entry.residual = std::abs(poly_eval(original, c.centroid));
    report.roots.push_back(entry);
  }
  std::sort(report.roots.begin(), report.roots.end(),
            [](const RootEntry& a, const RootEntry& b) {
              if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
              return a.value.imag() < b.value.imag();
            });

  report.verified = verify_report(original, report, radius + 1.0);
  if (report.verified && options.companion_cross_check) {
    const auto eig = companion_roots(original);
    for (const auto& e : eig) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& r : report.roots) best = std::min(best, std::abs(e - r.value));
      // Companion eigenvalues of a multiplicity-k root scatter like eps^{1/k};
      // this is a coarse agreement gate, not a precision test.
      if (best > 1e-4 * (1.0 + std::abs(e))) {
        report.verified = false;
        break;
      }
    }
  }
  return report;
}

bool verify_report(std::span<const cd> coeffs, const RootReport& report,
                   double enclosing_radius) {
  try {
    const std::vector<cd> c = trimmed(coeffs);
    if (c.size() < 2) return report.roots.empty();
    const long degree = static_cast<long>(c.size()) - 1;
    if (report.total_multiplicity() != degree) return false;

    if (winding_count(c, Contour{cd(0.0, 0.0), enclosing_radius, 256}) != degree) {
      return false;
    }
    for (std::size_t i = 0; i < report.roots.size(); ++i) {
      const cd zi = report.roots[i].value;
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < report.roots.size(); ++j) {
        if (j != i) nearest = std::min(nearest, std::abs(zi - report.roots[j].value));
      }
      // Any circle that excludes the other reported roots certifies this one;
      // staying at just under half the nearest-neighbor gap keeps |p| on the
      // contour far above the sampling floor.
      double radius = std::isfinite(nearest) ? 0.45 * nearest : 0.5 * (1.0 + std::abs(zi));
      if (!(radius > 0.0)) return false;
      if (winding_count(c, Contour{zi, radius, 256}) != report.roots[i].multiplicity) {
        return false;
      }
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<cd> companion_roots(std::span<const cd> coeffs) {
  const std::vector<cd> c = trimmed(coeffs);
  if (c.size() < 2) return {};
  const std::vector<cd> m = make_monic(c);
  const Eigen::Index n = static_cast<Eigen::Index>(m.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -m[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<cd> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

}  // namespace resokit::roots
