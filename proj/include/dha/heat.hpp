#pragma once

#include <Eigen/Core>

#include <vector>

#include "dha/lattice.hpp"

namespace dha {

constexpr double kHeatTolerance = 1e-10;
constexpr int kMaxHeatRadius = 4096;

struct HeatKernel {
  double t = 0.0;
  int dim = 1;
  int radius = 0;
  RealSequence values;
  // 1 - sum over the window lies in [0, tail_mass_bound]
  double tail_mass_bound = 0.0;
};

// Smallest R with N * sum_{|k|>R} e^{-2t} I_k(2t) <= eps; capped at max_radius.
int heat_radius(double t, int dim, double eps = kHeatTolerance, int max_radius = kMaxHeatRadius);

// G_{t,N}(n) = prod_k e^{-2t} I_{n_k}(2t); radius < 0 selects the automatic radius.
HeatKernel heat_kernel(double t, int dim, int radius = -1, double eps = kHeatTolerance);

// Convolution with a symmetric separable kernel given by its 1-D half profile h(0..R).
// The result lives on the window of radius out_radius (>= f.radius()).
template <typename S>
Sequence<S> separable_convolve(const Sequence<S>& f, const Eigen::ArrayXd& half, int out_radius);

// W_t f on the full support radius R_f + R_G (or cropped when crop_radius >= 0).
RealSequence evolve(const RealSequence& f, double t, int crop_radius = -1, double eps = kHeatTolerance);

// ||G_{t,N}||_r, using ||G_{t,N}||_r = ||G_{t,1}||_r^N.
double kernel_norm(double t, int dim, double r);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> t;
  std::vector<double> value;
};

// Ordinary least squares of log(value) against log(t).
SlopeFit fit_loglog(const std::vector<double>& t, const std::vector<double>& value);

// t_min * ratio^j up to t_max.
std::vector<double> geometric_grid(double t_min, double t_max, double ratio = 2.0);
// per_decade points per decade, both endpoints included.
std::vector<double> log_grid(double t_min, double t_max, int per_decade);

SlopeFit decay_slope_fit(int dim, double r, const std::vector<double>& t_grid);

// ||W_t f - (sum f) G_t||_p
double mass_residual(const RealSequence& f, double t, double p);

// Slope of mass_residual over t_grid; validates 1 <= q < N/(N-1), q <= p and sum f != 0.
SlopeFit mass_slope_fit(const RealSequence& f, double p, double q, const std::vector<double>& t_grid);

// -1/2 - N/2 (1/q - 1/p)
double mass_slope_exponent(int dim, double p, double q);

enum class Envelope { H, H2, H3 };

const char* to_string(Envelope e);

// H = (z/t) G1(z)^N, H2 = (1/t + z^2/t^2) G1(z)^N, H3 = (z/t^2 + z^3/t^3) G1(z)^N
// where G1(z) = e^{-2t} I_z(2t).
double smoothness_envelope(Envelope kind, double t, double z, int dim);

// max over the grid of |W_t f| on the window of f (a lower bound for the supremum over t > 0).
RealSequence maximal_heat(const RealSequence& f, const std::vector<double>& t_grid);

}  // namespace dha
