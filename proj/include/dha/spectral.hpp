#pragma once

#include <Eigen/Core>

#include <complex>
#include <functional>

#include "dha/lattice.hpp"

namespace dha {

// Uniform grid of [-1/2, 1/2)^N with nodes x_j = j/M - 1/2 on each axis.
struct TorusGrid {
  int dim = 1;
  int M = 2;

  TorusGrid() = default;
  TorusGrid(int dim_, int M_);

  Index size() const;
  double node(int j) const { return double(j) / M - 0.5; }
  // sum_i sin^2(pi x_i) at every node, row-major
  Eigen::ArrayXd lambda() const;
  // x_axis at every node
  Eigen::ArrayXd coordinate(int axis) const;
  // row-major index of the node x = 0
  Index dc_index() const;
};

// Smallest even 2-3-5 smooth integer >= n.
int smooth_size(int n);

// Default grid size: 4 x window diameter, rounded up to a smooth size.
int default_grid_size(int radius);

enum class SymbolKind { identity, heat, poisson, riesz, riesz_bar, frac_neg, frac_pos, laplace_type,
                        imaginary_power, custom };

const char* to_string(SymbolKind k);

struct TorusSymbol {
  TorusGrid grid;
  Eigen::ArrayXcd values;
  SymbolKind kind = SymbolKind::custom;
};

// Samples of Ff(x) = sum_k f(k) e^{2 pi i <k, x>} at every node.
Eigen::ArrayXcd dft(const ComplexSequence& f, const TorusGrid& g);
Eigen::ArrayXcd dft(const RealSequence& f, const TorusGrid& g);

// Periodic lattice values f(n), n mod M, recovered from node samples: the exact inverse of
// the sampled transform for sequences whose support fits in one period.
struct TorusField {
  TorusGrid grid;
  Eigen::ArrayXcd values;  // indexed by (n_i mod M), row-major

  ComplexSequence crop(int radius) const;
  // l2 norm over one full period
  double l2_norm() const;
};

TorusField idft(const Eigen::ArrayXcd& samples, const TorusGrid& g);
ComplexSequence idft(const Eigen::ArrayXcd& samples, const TorusGrid& g, int radius);

TorusSymbol identity_symbol(const TorusGrid& g);
// e^{-4 t lambda}
TorusSymbol heat_symbol(const TorusGrid& g, double t);
// e^{-2 t sqrt(lambda)}
TorusSymbol poisson_symbol(const TorusGrid& g, double t);
// (e^{-2 pi i x_i} - 1) / (4 lambda)^{1/2} = -i e^{-pi i x_i} sin(pi x_i) / sqrt(lambda); 0 at DC
TorusSymbol riesz_symbol(const TorusGrid& g, int axis);
// (1 - e^{2 pi i x_i}) / (4 lambda)^{1/2}; 0 at DC
TorusSymbol riesz_bar_symbol(const TorusGrid& g, int axis);
// (4 lambda)^{-sigma}, 0 < sigma < N/2; 0 at DC
TorusSymbol frac_neg_symbol(const TorusGrid& g, double sigma);
// (4 lambda)^{s}, 0 < s < 1
TorusSymbol frac_pos_symbol(const TorusGrid& g, double s);
// (4 lambda)^{i gamma}; 0 at DC
TorusSymbol imaginary_power_symbol(const TorusGrid& g, double gamma);
// M(4 lambda) for a scalar multiplier function; M(0) is taken as the value at DC unless zero_dc.
TorusSymbol symbol_from(const TorusGrid& g, const std::function<cdouble(double)>& m, bool zero_dc,
                        SymbolKind kind = SymbolKind::custom);

TorusField apply_multiplier_field(const ComplexSequence& f, const TorusSymbol& sym);
// idft(symbol * dft(f)) on the window of radius out_radius (default: the window of f).
ComplexSequence apply_multiplier(const ComplexSequence& f, const TorusSymbol& sym, int out_radius = -1);
// Real-output variant; throws if the imaginary residue exceeds 1e-10 relative to the output.
RealSequence apply_multiplier_real(const RealSequence& f, const TorusSymbol& sym, int out_radius = -1);

// Evaluation route for convolution operators.
enum class Path { kernel, spectral };

const char* to_string(Path p);

// Grid size for the spectral path: at least twice the window diameter.
int spectral_grid_size(int radius, int requested = 0);

// Gamma function for complex arguments (Lanczos).
cdouble complex_gamma(cdouble z);

}  // namespace dha
