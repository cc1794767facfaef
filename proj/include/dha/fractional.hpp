#pragma once

#include <vector>

#include "dha/lattice.hpp"
#include "dha/spectral.hpp"
#include "dha/time_integral.hpp"

namespace dha {

enum class FracSign { neg, pos };

struct FracKernel {
  FracSign sign = FracSign::neg;
  double exponent = 0.0;  // sigma for neg, s for pos
  int dim = 1;
  RealSequence values;
  RealSequence error;     // per-entry quadrature error estimate
  // pos only: sum_{n != 0} K_s(n), the diagonal coefficient of the pointwise formula
  double total = 0.0;
  int radius() const { return values.radius(); }
};

// scale * int_0^inf G_{t,N}(n) t^{beta-1} dt on the window. Each distinct sorted tuple of |n_k| is
// integrated once; skip_origin leaves n = 0 at zero.
RealSequence symmetric_time_integral(int dim, int radius, double beta, double scale, bool skip_origin = false,
                                     RealSequence* error = nullptr);

// K_sigma(n) = Gamma(sigma)^{-1} int_0^inf G_{t,N}(n) t^{sigma-1} dt, 0 < 2 sigma < N.
FracKernel frac_integral_kernel(double sigma, int dim, int radius);

// K_s(n) = (s / Gamma(1-s)) int_0^inf G_{t,N}(n) t^{-s-1} dt for n != 0, K_s(0) = 0, 0 < s < 1.
FracKernel frac_power_kernel(double s, int dim, int radius);

// (-Delta)^{-sigma} f on the window of radius out_radius (default: the window of f).
// The spectral path requires sum f = 0; grid_size 0 selects the default.
RealSequence apply_frac_integral(const RealSequence& f, double sigma, Path path, int out_radius = -1,
                                 int grid_size = 0);

// (-Delta)^s f(n) = sum_{k != n} K_s(n-k) (f(n) - f(k)).
RealSequence apply_frac_power(const RealSequence& f, double s, Path path, int out_radius = -1, int grid_size = 0);
// Same with a prebuilt kernel of radius >= out_radius + R_f.
RealSequence apply_frac_power(const RealSequence& f, const FracKernel& K, int out_radius = -1);

struct FracLimitReport {
  std::vector<double> s_to_zero, dev_zero;  // ||(-Delta)^s f - f||_inf
  std::vector<double> s_to_one, dev_one;    // ||(-Delta)^s f + Delta f||_inf
  bool decreasing_zero = true;
  bool decreasing_one = true;
};

// Deviations are measured on the window of f enlarged by one.
FracLimitReport frac_limits_check(const RealSequence& f, const std::vector<double>& s_to_zero,
                                  const std::vector<double>& s_to_one);

// (-Delta)^s f(n0) for f >= 0 with f(n0) = 0. K must cover radius 2 R_f.
double maximum_principle_check(const RealSequence& f, const Point& n0, const FracKernel& K);
double maximum_principle_check(const RealSequence& f, const Point& n0, double s);

// (-Delta)^s f(n0) - (-Delta)^s g(n0) for f >= g with f(n0) = g(n0); nonpositive by the comparison principle.
double comparison_principle_check(const RealSequence& f, const RealSequence& g, const Point& n0,
                                  const FracKernel& K);

enum class SchauderMode { a, c };

// Mode c: [(-Delta)^{-sigma} f]_{C^{0,2 sigma}} / ||f||_inf with 0 < sigma < 1/2.
// Mode a: [(-Delta)^{-sigma} f]_{C^{0,2 sigma + alpha}} / [f]_{C^{0,alpha}} with alpha + 2 sigma < 1.
// Seminorms over the window of f; the transform of a constant is constant, so constant input gives 0.
double schauder_ratio(const RealSequence& f, double sigma, SchauderMode mode, double alpha = 0.0);
double schauder_ratio(const RealSequence& f, const FracKernel& K, SchauderMode mode, double alpha = 0.0);

// Exponent condition for ||(-Delta)^{-sigma} f||_p <= C ||f||_q: 1 < q < p < inf, 1/p <= 1/q - 2 sigma / N.
bool hls_admissible(int dim, double sigma, double p, double q);

// ||(-Delta)^{-sigma} f||_p / ||f||_q with the output on radius out_radius.
double hls_ratio(const RealSequence& f, double sigma, double p, double q, int out_radius);

}  // namespace dha
