#pragma once

#include <functional>
#include <vector>

namespace dha {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]; cached per n.
const QuadratureRule& gauss_legendre(int n);

// Fixed n-point Gauss-Legendre on [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n = 16);

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

// Bisection with a 16-point rule checked against an 8-point rule on each piece.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol = 1e-14, int max_depth = 40);

}  // namespace dha
