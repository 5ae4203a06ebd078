#pragma once

#include <vector>

namespace resokit::quad {

// Gauss–Legendre nodes and weights on [-1, 1] (Newton on P_n).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

// Composite rule on [a, b]: uniform panels no wider than panel_width, each
// carrying a Gauss–Legendre rule of the given order.
GaussRule composite_gauss_legendre(double a, double b, double panel_width, int order);

}  // namespace resokit::quad
