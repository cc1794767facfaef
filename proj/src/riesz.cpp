#include "dha/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "dha/errors.hpp"
#include "dha/time_integral.hpp"

namespace dha {

namespace {

void check_axis(int axis, int dim) {
  if (dim < 2) throw DomainError("Riesz transforms require N >= 2; use the Hilbert transform for N = 1");
  if (axis < 0 || axis >= dim) throw DomainError("Riesz axis must lie in 1..N");
}

}  // namespace

RieszKernel riesz_kernel(int axis, int dim, int radius) {
  check_axis(axis, dim);
  require(radius >= 0, "radius must be nonnegative");
  const Window w(dim, radius);
  // the entry depends on n_i and the sorted |n_j|, j != i
  std::map<std::vector<int>, int> slot;
  std::vector<HeatProductIntegrand> items;
  std::vector<int> which(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    std::vector<int> key;
    for (int a = 0; a < dim; ++a)
      if (a != axis) key.push_back(std::abs(w.coord(i, a)));
    std::sort(key.begin(), key.end());
    key.insert(key.begin(), w.coord(i, axis));
    auto [it, fresh] = slot.try_emplace(key, static_cast<int>(items.size()));
    if (fresh) {
      HeatProductIntegrand h;
      h.coef = {1.0, -1.0};
      std::vector<int> idx(key.begin() + 1, key.end());
      idx.insert(idx.begin(), std::abs(key[0] + 1));
      h.index = idx;
      idx[0] = std::abs(key[0]);
      h.index.insert(h.index.end(), idx.begin(), idx.end());
      items.push_back(std::move(h));
    }
    which[i] = it->second;
  }
  const TimeIntegralResult r = heat_time_integral(items, dim, 0.5);
  const double c = 1.0 / std::sqrt(std::numbers::pi);
  RieszKernel K;
  K.axis = axis;
  K.dim = dim;
  K.values = RealSequence(w);
  K.error = RealSequence(w);
  for (Index i = 0; i < w.size(); ++i) {
    K.values[i] = c * r.values[which[i]];
    K.error[i] = c * r.error[which[i]];
  }
  return K;
}

RieszKernel riesz_bar_kernel(int axis, int dim, int radius) {
  const RieszKernel F = riesz_kernel(axis, dim, radius + 1);
  RieszKernel K = F;
  K.bar = true;
  K.values = RealSequence(dim, radius);
  K.error = RealSequence(dim, radius);
  const Window& w = K.values.window();
  for (Index i = 0; i < w.size(); ++i) {
    Point p = w.point(i);
    p[axis] -= 1;
    K.values[i] = F.values.at(p);
    K.error[i] = F.error.at(p);
  }
  return K;
}

RealSequence apply_riesz(const RealSequence& f, const RieszKernel& K, int out_radius) {
  require(K.dim == f.dim(), "dimension mismatch");
  return convolve_to(f, K.values, out_radius < 0 ? f.radius() : out_radius);
}

RealSequence apply_riesz(const RealSequence& f, int axis, Path path, bool bar, int out_radius, int grid_size) {
  check_axis(axis, f.dim());
  const int Ro = out_radius < 0 ? f.radius() : out_radius;
  if (path == Path::kernel) {
    const int R = Ro + f.radius();
    return apply_riesz(f, bar ? riesz_bar_kernel(axis, f.dim(), R) : riesz_kernel(axis, f.dim(), R), Ro);
  }
  if (std::abs(f.sum()) > 1e-12 * std::max(lp_norm(f, 1.0), 1e-300))
    throw DomainError("the spectral path for Riesz transforms requires sum f = 0");
  const TorusGrid g(f.dim(), spectral_grid_size(std::max(Ro, f.radius()), grid_size));
  return apply_multiplier_real(f, bar ? riesz_bar_symbol(g, axis) : riesz_symbol(g, axis), Ro);
}

RealSequence hilbert_apply(const RealSequence& f, int out_radius) {
  if (f.dim() != 1) throw DomainError("the Hilbert transform requires N = 1");
  const int Ro = out_radius < 0 ? f.radius() : out_radius;
  RealSequence out(1, Ro);
  for (int n = -Ro; n <= Ro; ++n) {
    double acc = 0.0;
    for (int k = -f.radius(); k <= f.radius(); ++k) acc += f.at({k}) / (n - k + 0.5);
    out.ref({n}) = acc;
  }
  return out;
}

double riesz_holder_ratio(const RealSequence& f, double alpha, const RieszKernel& K) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("Riesz Hoelder bound requires 0 < alpha < 1/2");
  if (f.size() == 0 || (f.values() == f[0]).all()) return 0.0;
  require(K.radius() >= 2 * f.radius(), "kernel window too small");
  const RealSequence u = apply_riesz(f, K, f.radius());
  return holder_seminorm(u, alpha) / holder_seminorm(f.resized(f.radius() + 1), alpha);
}

double riesz_holder_ratio(const RealSequence& f, double alpha, int axis) {
  check_axis(axis, f.dim());
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("Riesz Hoelder bound requires 0 < alpha < 1/2");
  return riesz_holder_ratio(f, alpha, riesz_kernel(axis, f.dim(), 2 * f.radius()));
}

}  // namespace dha
