#pragma once

#include <Eigen/Core>

#include <vector>

namespace dha {

// Integrand of the form  c + sum_q coef_q * prod_k g_t(m_{q,k}),  g_t(m) = e^{-2t} I_m(2t).
// Indices m are nonnegative (callers pass |n_k|).
struct HeatProductIntegrand {
  double constant = 0.0;
  std::vector<double> coef;
  std::vector<int> index;  // dim entries per term, concatenated
};

struct TimeIntegralOptions {
  double t0 = 0.05;         // Taylor head on (0, t0]
  double panel_width = 0.5; // Gauss-Legendre panels in log t on [t0, T]
  int nodes = 16;
  int taylor_degree = 40;
  int tail_terms = 12;      // asymptotic terms beyond T
};

struct TimeIntegralResult {
  Eigen::ArrayXd values;
  Eigen::ArrayXd error;     // |16-point minus 8-point panel sums|
  double t_split = 0.0;     // T
};

// int_0^inf phi(t) t^{beta-1} dt for every integrand.
TimeIntegralResult heat_time_integral(const std::vector<HeatProductIntegrand>& items, int dim, double beta,
                                      const TimeIntegralOptions& opt = {});

}  // namespace dha
