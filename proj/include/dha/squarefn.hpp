#pragma once

#include <functional>
#include <vector>

#include "dha/lattice.hpp"
#include "dha/spectral.hpp"

namespace dha {

// Geometric grid in t with the trapezoid rule in log t; weights(k) integrate t^{2k-1}(.) dt.
struct TimeGridQuadrature {
  double t_min = 1e-4;
  double t_max = 1e4;
  int per_decade = 32;
  std::vector<double> t;
  std::vector<double> log_weight;  // trapezoid weights in log t

  TimeGridQuadrature() : TimeGridQuadrature(1e-4, 1e4, 32) {}
  TimeGridQuadrature(double t_min, double t_max, int per_decade);
  std::vector<double> weights(int k) const;
};

// Pointwise square function together with the tail completions included in it.
struct SquareFunction {
  RealSequence values;  // (quadrature + tails)^{1/2}
  RealSequence tail;    // estimated contribution of (0, t_min) and (t_max, inf) to values^2
};

// g_k f(n) = (int t^{2k-1} |Delta^k W_t f(n)|^2 dt)^{1/2} on the window of radius out_radius.
// Below t_min the integrand is frozen at t_min; above t_max it is continued as A t^{-k-N/2}.
SquareFunction gk(const RealSequence& f, int k, const TimeGridQuadrature& grid = {}, int out_radius = -1);

// Poisson version with d^k/dt^k P_t f from the symbol (-2 sqrt(lambda))^k e^{-2t sqrt(lambda)}.
// Tails: frozen below t_min, continued as A t^{-k-N} above t_max.
SquareFunction gk_poisson(const RealSequence& f, int k, const TimeGridQuadrature& grid = {}, int out_radius = -1,
                          int grid_size = 0);

struct SquareNorm {
  double value = 0.0;  // ||g f||_2^2 over Z^N, tails included
  double lower_tail = 0.0;
  double upper_tail = 0.0;
};

// ||g_k f||^2 over all of Z^N, from ||Delta^k W_t f||^2 = sum_m A_f(m) Delta^{2k} G_{2t}(m) with the
// autocorrelation A_f.
SquareNorm gk_norm_squared(const RealSequence& f, int k, const TimeGridQuadrature& grid = {});

// Poisson version over one period of an M-torus (Parseval per t); the default M is 65536, 256, 64
// for N = 1, 2, 3.
SquareNorm gk_poisson_norm_squared(const RealSequence& f, int k, const TimeGridQuadrature& grid = {},
                                   int grid_size = 0);

// Gamma(2k) / 2^{2k}
double gk_identity_constant(int k);

// M(x) = x int_0^inf e^{-xt} a(t) dt evaluated at x = 4 lambda on the grid; M(0) = 0.
// a_bound is the caller's declared sup |a|; it must be finite and is checked at the quadrature nodes.
using TimeProfile = std::function<cdouble(double)>;
TorusSymbol laplace_symbol(const TorusGrid& g, const TimeProfile& a, double a_bound);

ComplexSequence laplace_multiplier_apply(const ComplexSequence& f, const TimeProfile& a, double a_bound,
                                         int out_radius = -1, int grid_size = 0);

// a(t) = t^{-i gamma} / Gamma(1 - i gamma), whose Laplace multiplier is x^{i gamma}.
TimeProfile imaginary_power_profile(double gamma);
// sup |a| = |Gamma(1 - i gamma)|^{-1}
double imaginary_power_bound(double gamma);

}  // namespace dha
