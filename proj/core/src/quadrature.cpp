#include "resokit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "resokit/errors.hpp"

namespace resokit::quad {
namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Tricomi-style initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[k] = -x;
    rule.nodes[n - 1 - k] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[k] = w;
    rule.weights[n - 1 - k] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 512) {
    throw Error("gauss_legendre: order must be in [1, 512]");
  }
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;  // node-stable container: references survive
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

GaussRule composite_gauss_legendre(double a, double b, double panel_width, int order) {
  if (!(b > a)) throw Error("composite_gauss_legendre: empty interval");
  if (!(panel_width > 0.0)) throw Error("composite_gauss_legendre: panel width must be positive");
  const GaussRule& base = gauss_legendre(order);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
  const double h = (b - a) / panels;
  GaussRule out;
  out.nodes.reserve(static_cast<std::size_t>(panels) * order);
  out.weights.reserve(static_cast<std::size_t>(panels) * order);
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    for (int k = 0; k < order; ++k) {
      out.nodes.push_back(mid + half * base.nodes[k]);
      out.weights.push_back(half * base.weights[k]);
    }
  }
  return out;
}

}  // namespace resokit::quad
