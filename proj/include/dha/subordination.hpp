#pragma once

#include <vector>

#include "dha/lattice.hpp"

namespace dha {

// Nodes and weights for int_0^inf e^{-u} u^{-1/2} phi(u) du.
// Gauss-Legendre panels in log u on [u_min, u_max]; the measure outside is below 1e-13.
struct SubordinationQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
  double total() const;  // sqrt(pi) up to 1e-12
};

SubordinationQuadrature subordination_quadrature(double panel_width = 1.0, int points = 16);

struct PoissonKernel {
  double t = 0.0;
  int dim = 1;
  int radius = 0;
  RealSequence values;
  double window_mass = 0.0;   // sum of Q_t over the window
  double outside_mass = 0.0;  // exact mass of Q_t outside the window, from the heat tails
  // |window_mass + outside_mass - 1|
  double normalization_error() const;
};

// Q_t(n) = pi^{-1/2} int e^{-u} u^{-1/2} G_{t^2/(4u), N}(n) du on the window of the given radius.
PoissonKernel poisson_kernel(double t, int dim, int radius,
                             const SubordinationQuadrature& q = subordination_quadrature());

// P_t f on the window of radius out_radius (default: the window of f). Every entry is the full
// lattice convolution, no truncation of Q_t.
RealSequence poisson_evolve(const RealSequence& f, double t, int out_radius = -1,
                            const SubordinationQuadrature& q = subordination_quadrature());

// (P_{t+h} f - 2 P_t f + P_{t-h} f) / h^2 + Delta P_t f on the window of radius out_radius.
RealSequence laplace_residual(const RealSequence& f, double t, double h, int out_radius = -1,
                              const SubordinationQuadrature& q = subordination_quadrature());

// max over the grid of |P_t f| on the window of f.
RealSequence maximal_poisson(const RealSequence& f, const std::vector<double>& t_grid,
                             const SubordinationQuadrature& q = subordination_quadrature());

// max_{|n| <= radius} |Q_t(n) - inverse DFT of e^{-2t sqrt(lambda)} on the M-grid|.
double poisson_symbol_discrepancy(const PoissonKernel& Q, int M);

}  // namespace dha
