#pragma once

#include "dha/lattice.hpp"
#include "dha/spectral.hpp"

namespace dha {

struct RieszKernel {
  int axis = 0;
  int dim = 2;
  bool bar = false;  // backward variant delta_i^- (-Delta)^{-1/2}
  RealSequence values;
  RealSequence error;
  int radius() const { return values.radius(); }
};

// R_i(n) = pi^{-1/2} int_0^inf (G_t(n + e_i) - G_t(n)) t^{-1/2} dt, N >= 2, axis 0-based.
RieszKernel riesz_kernel(int axis, int dim, int radius);
// Kernel of the backward variant: R_i(n - e_i).
RieszKernel riesz_bar_kernel(int axis, int dim, int radius);

// R_i f or its backward variant on the window of radius out_radius (default: the window of f).
// The spectral path requires sum f = 0.
RealSequence apply_riesz(const RealSequence& f, int axis, Path path, bool bar = false, int out_radius = -1,
                         int grid_size = 0);
RealSequence apply_riesz(const RealSequence& f, const RieszKernel& K, int out_radius = -1);

// Discrete Hilbert transform sum_k f(k) / (n - k + 1/2), N = 1.
RealSequence hilbert_apply(const RealSequence& f, int out_radius = -1);

// [R_i f]_{C^{0,alpha}} / [f]_{C^{0,alpha}} over the window of f, 0 < alpha < 1/2. The input
// seminorm includes the ring of zeros around the window; constant input gives 0.
double riesz_holder_ratio(const RealSequence& f, double alpha, int axis = 0);
double riesz_holder_ratio(const RealSequence& f, double alpha, const RieszKernel& K);

}  // namespace dha
