#include "dha/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dha/errors.hpp"

namespace dha {

namespace {

void check_sigma(double sigma, int dim) {
  if (!(sigma > 0.0 && 2.0 * sigma < dim))
    throw DomainError("negative powers require 0 < 2 sigma < N (sigma = " + std::to_string(sigma) +
                      ", N = " + std::to_string(dim) + ")");
}

void check_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional powers require 0 < s < 1");
}

// s / Gamma(1 - s) = -1 / Gamma(-s)
double pos_prefactor(double s) { return s / std::tgamma(1.0 - s); }

int out_or(const RealSequence& f, int out_radius) { return out_radius < 0 ? f.radius() : out_radius; }

}  // namespace

RealSequence symmetric_time_integral(int dim, int radius, double beta, double scale, bool skip_origin,
                                     RealSequence* error) {
  require(dim >= 1 && radius >= 0, "invalid dimension or radius");
  const Window w(dim, radius);
  std::map<std::vector<int>, int> slot;
  std::vector<HeatProductIntegrand> items;
  std::vector<int> which(w.size(), -1);
  for (Index i = 0; i < w.size(); ++i) {
    std::vector<int> key(dim);
    for (int a = 0; a < dim; ++a) key[a] = std::abs(w.coord(i, a));
    std::sort(key.begin(), key.end());
    if (skip_origin && key.back() == 0) continue;
    auto [it, fresh] = slot.try_emplace(key, static_cast<int>(items.size()));
    if (fresh) items.push_back({0.0, {1.0}, key});
    which[i] = it->second;
  }
  const TimeIntegralResult r = heat_time_integral(items, dim, beta);
  RealSequence out(w);
  if (error) *error = RealSequence(w);
  for (Index i = 0; i < w.size(); ++i) {
    if (which[i] < 0) continue;
    out[i] = scale * r.values[which[i]];
    if (error) (*error)[i] = std::abs(scale) * r.error[which[i]];
  }
  return out;
}

FracKernel frac_integral_kernel(double sigma, int dim, int radius) {
  check_sigma(sigma, dim);
  FracKernel K;
  K.sign = FracSign::neg;
  K.exponent = sigma;
  K.dim = dim;
  K.values = symmetric_time_integral(dim, radius, sigma, 1.0 / std::tgamma(sigma), false, &K.error);
  return K;
}

FracKernel frac_power_kernel(double s, int dim, int radius) {
  check_s(s);
  FracKernel K;
  K.sign = FracSign::pos;
  K.exponent = s;
  K.dim = dim;
  const double c = pos_prefactor(s);
  K.values = symmetric_time_integral(dim, radius, -s, c, true, &K.error);
  HeatProductIntegrand one{1.0, {-1.0}, std::vector<int>(dim, 0)};
  K.total = c * heat_time_integral({one}, dim, -s).values[0];
  return K;
}

RealSequence apply_frac_integral(const RealSequence& f, double sigma, Path path, int out_radius, int grid_size) {
  check_sigma(sigma, f.dim());
  const int Ro = out_or(f, out_radius);
  if (path == Path::kernel) {
    const FracKernel K = frac_integral_kernel(sigma, f.dim(), Ro + f.radius());
    return convolve_to(f, K.values, Ro);
  }
  if (std::abs(f.sum()) > 1e-12 * std::max(lp_norm(f, 1.0), 1e-300))
    throw DomainError("the spectral path for negative powers requires sum f = 0");
  const TorusGrid g(f.dim(), spectral_grid_size(std::max(Ro, f.radius()), grid_size));
  return apply_multiplier_real(f, frac_neg_symbol(g, sigma), Ro);
}

RealSequence apply_frac_power(const RealSequence& f, const FracKernel& K, int out_radius) {
  require(K.sign == FracSign::pos, "kernel is not a positive-power kernel");
  require(K.dim == f.dim(), "dimension mismatch");
  const int Ro = out_or(f, out_radius);
  RealSequence out = convolve_to(f, K.values, Ro);
  out.values() = K.total * f.resized(Ro).values() - out.values();
  return out;
}

RealSequence apply_frac_power(const RealSequence& f, double s, Path path, int out_radius, int grid_size) {
  check_s(s);
  const int Ro = out_or(f, out_radius);
  if (path == Path::kernel) return apply_frac_power(f, frac_power_kernel(s, f.dim(), Ro + f.radius()), Ro);
  const TorusGrid g(f.dim(), spectral_grid_size(std::max(Ro, f.radius()), grid_size));
  return apply_multiplier_real(f, frac_pos_symbol(g, s), Ro);
}

namespace {
bool strictly_decreasing(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}
}  // namespace

FracLimitReport frac_limits_check(const RealSequence& f, const std::vector<double>& s_to_zero,
                                  const std::vector<double>& s_to_one) {
  const int Ro = f.radius() + 1;
  const RealSequence f1 = f.resized(Ro);
  RealSequence lap = laplacian(f1);
  FracLimitReport rep;
  for (double s : s_to_zero) {
    const RealSequence u = apply_frac_power(f, s, Path::kernel, Ro);
    rep.s_to_zero.push_back(s);
    rep.dev_zero.push_back(lp_norm(u - f1, INFINITY));
  }
  for (double s : s_to_one) {
    const RealSequence u = apply_frac_power(f, s, Path::kernel, Ro);
    rep.s_to_one.push_back(s);
    rep.dev_one.push_back(lp_norm(u + lap, INFINITY));
  }
  rep.decreasing_zero = strictly_decreasing(rep.dev_zero);
  rep.decreasing_one = strictly_decreasing(rep.dev_one);
  return rep;
}

namespace {

int linf(const Point& p) {
  int m = 0;
  for (int c : p) m = std::max(m, std::abs(c));
  return m;
}

// (-Delta)^s h(n0) from the pointwise formula; the zero extension contributes through K.total.
double pointwise_power(const RealSequence& h, const Point& n0, const FracKernel& K) {
  require(K.sign == FracSign::pos, "kernel is not a positive-power kernel");
  require(K.dim == h.dim() && static_cast<int>(n0.size()) == h.dim(), "dimension mismatch");
  require(K.radius() >= linf(n0) + h.radius(), "kernel window too small");
  const Window& w = h.window();
  double acc = 0.0;
  Point d(h.dim());
  for (Index i = 0; i < w.size(); ++i) {
    if (h[i] == 0.0) continue;
    for (int a = 0; a < h.dim(); ++a) d[a] = n0[a] - w.coord(i, a);
    acc += K.values.at(d) * h[i];
  }
  return h.at(n0) * K.total - acc;
}

}  // namespace

double maximum_principle_check(const RealSequence& f, const Point& n0, const FracKernel& K) {
  require((f.values() >= 0.0).all(), "maximum principle requires f >= 0");
  require(f.at(n0) == 0.0, "maximum principle requires f(n0) = 0");
  return pointwise_power(f, n0, K);
}

double maximum_principle_check(const RealSequence& f, const Point& n0, double s) {
  check_s(s);
  return maximum_principle_check(f, n0, frac_power_kernel(s, f.dim(), linf(n0) + f.radius()));
}

double comparison_principle_check(const RealSequence& f, const RealSequence& g, const Point& n0,
                                  const FracKernel& K) {
  require(f.window() == g.window(), "comparison requires a common window");
  require((f.values() >= g.values()).all(), "comparison principle requires f >= g");
  require(f.at(n0) == g.at(n0), "comparison principle requires f(n0) = g(n0)");
  return pointwise_power(f, n0, K) - pointwise_power(g, n0, K);
}

double schauder_ratio(const RealSequence& f, const FracKernel& K, SchauderMode mode, double alpha) {
  require(K.sign == FracSign::neg, "kernel is not a negative-power kernel");
  const double sigma = K.exponent;
  if (mode == SchauderMode::c) {
    if (!(sigma > 0.0 && sigma < 0.5)) throw DomainError("Schauder mode c requires 0 < sigma < 1/2");
  } else if (!(alpha > 0.0 && alpha + 2.0 * sigma < 1.0)) {
    throw DomainError("Schauder mode a requires alpha > 0 and alpha + 2 sigma < 1");
  }
  if (f.size() == 0 || (f.values() == f[0]).all()) return 0.0;
  require(K.radius() >= 2 * f.radius(), "kernel window too small");
  const RealSequence u = convolve_to(f, K.values, f.radius());
  if (mode == SchauderMode::c) return holder_seminorm(u, 2.0 * sigma) / lp_norm(f, INFINITY);
  // the input seminorm includes the ring of zeros around the window
  return holder_seminorm(u, 2.0 * sigma + alpha) / holder_seminorm(f.resized(f.radius() + 1), alpha);
}

double schauder_ratio(const RealSequence& f, double sigma, SchauderMode mode, double alpha) {
  check_sigma(sigma, f.dim());
  return schauder_ratio(f, frac_integral_kernel(sigma, f.dim(), 2 * f.radius()), mode, alpha);
}

bool hls_admissible(int dim, double sigma, double p, double q) {
  if (!(sigma > 0.0 && 2.0 * sigma < dim)) return false;
  if (!(q > 1.0 && p > q && std::isfinite(p))) return false;
  return 1.0 / p <= 1.0 / q - 2.0 * sigma / dim + 1e-15;
}

double hls_ratio(const RealSequence& f, double sigma, double p, double q, int out_radius) {
  check_sigma(sigma, f.dim());
  const RealSequence u = apply_frac_integral(f, sigma, Path::kernel, out_radius);
  const double d = lp_norm(f, q);
  return d > 0.0 ? lp_norm(u, p) / d : 0.0;
}

}  // namespace dha
