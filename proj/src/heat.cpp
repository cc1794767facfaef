#include "dha/heat.hpp"

#include <algorithm>
#include <cmath>

#include "dha/bessel.hpp"
#include "dha/errors.hpp"

namespace dha {

namespace {

// profile far enough out that everything beyond is below double resolution
Eigen::ArrayXd wide_profile(double t) {
  const int kbig = static_cast<int>(std::ceil(std::sqrt(200.0 * t))) + 60;
  return heat_profile(t, kbig);
}

}  // namespace

int heat_radius(double t, int dim, double eps, int max_radius) {
  require(t > 0.0, "heat kernel requires t > 0");
  require(dim >= 1, "dimension must be >= 1");
  const Eigen::ArrayXd g = wide_profile(t);
  const int kbig = static_cast<int>(g.size()) - 1;
  double tail = 0.0;  // sum_{|k| > R} g, built from the far end
  int R = kbig;
  for (int k = kbig; k >= 1; --k) {
    const double next = tail + 2.0 * g[k];
    if (dim * next > eps) break;
    tail = next;
    R = k - 1;
  }
  if (R > max_radius)
    throw DomainError("heat kernel radius " + std::to_string(R) + " exceeds the cap " +
                      std::to_string(max_radius));
  return R;
}

HeatKernel heat_kernel(double t, int dim, int radius, double eps) {
  require(t > 0.0, "heat kernel requires t > 0");
  require(dim >= 1, "dimension must be >= 1");
  HeatKernel hk;
  hk.t = t;
  hk.dim = dim;
  hk.radius = radius < 0 ? heat_radius(t, dim, eps) : radius;
  const Eigen::ArrayXd wide = wide_profile(t);
  const Eigen::ArrayXd g = heat_profile(t, hk.radius);
  double tail1 = 0.0;
  for (Index k = hk.radius + 1; k < wide.size(); ++k) tail1 += 2.0 * wide[k];
  hk.tail_mass_bound = dim * tail1 + 1e-15 * dim;
  hk.values = RealSequence(dim, hk.radius);
  const Window& w = hk.values.window();
  // factors multiplied in sorted order so permuted points get bit-identical values
  std::vector<int> c(dim);
  for (Index i = 0; i < w.size(); ++i) {
    for (int a = 0; a < dim; ++a) c[a] = std::abs(w.coord(i, a));
    std::sort(c.begin(), c.end());
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= g[c[a]];
    hk.values[i] = v;
  }
  return hk;
}

template <typename S>
Sequence<S> separable_convolve(const Sequence<S>& f, const Eigen::ArrayXd& half, int out_radius) {
  require(out_radius >= f.radius(), "output radius smaller than input radius");
  const int R = static_cast<int>(half.size()) - 1;
  Sequence<S> cur = f.resized(out_radius);
  const Window& w = cur.window();
  const int side = w.side();
  std::vector<S> line(side);
  for (int axis = 0; axis < w.dim; ++axis) {
    Sequence<S> next(w);
    const Index st = w.stride(axis);
    // enumerate lines: all indices with coordinate -R_out along this axis
    for (Index base = 0; base < w.size(); ++base) {
      if (w.coord(base, axis) != -w.radius) continue;
      int lo = side, hi = -1;
      for (int j = 0; j < side; ++j) {
        line[j] = cur[base + j * st];
        if (line[j] != S(0)) {
          lo = std::min(lo, j);
          hi = j;
        }
      }
      if (hi < 0) continue;
      const int olo = std::max(0, lo - R), ohi = std::min(side - 1, hi + R);
      for (int j = olo; j <= ohi; ++j) {
        S acc = S(0);
        const int ilo = std::max(lo, j - R), ihi = std::min(hi, j + R);
        for (int i = ilo; i <= ihi; ++i) acc += half[std::abs(j - i)] * line[i];
        next[base + j * st] = acc;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

template RealSequence separable_convolve(const RealSequence&, const Eigen::ArrayXd&, int);
template ComplexSequence separable_convolve(const ComplexSequence&, const Eigen::ArrayXd&, int);

RealSequence evolve(const RealSequence& f, double t, int crop_radius, double eps) {
  require(t >= 0.0, "evolve requires t >= 0");
  if (t == 0.0) return crop_radius >= 0 ? f.resized(crop_radius) : f;
  const int RG = heat_radius(t, f.dim(), eps);
  RealSequence u = separable_convolve(f, heat_profile(t, RG), f.radius() + RG);
  return crop_radius >= 0 ? u.resized(crop_radius) : u;
}

double kernel_norm(double t, int dim, double r) {
  require(t > 0.0, "kernel_norm requires t > 0");
  require(r >= 1.0, "kernel_norm requires r >= 1");
  const Eigen::ArrayXd g = wide_profile(t);
  if (std::isinf(r)) return std::pow(g[0], dim);
  double s = 0.0;
  for (Index k = g.size() - 1; k >= 1; --k) s += 2.0 * std::pow(g[k], r);
  s += std::pow(g[0], r);
  return std::pow(s, dim / r);
}

SlopeFit fit_loglog(const std::vector<double>& t, const std::vector<double>& value) {
  require(t.size() == value.size() && t.size() >= 2, "slope fit needs at least two points");
  const double n = static_cast<double>(t.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    require(t[i] > 0.0 && value[i] > 0.0, "slope fit needs positive data");
    const double x = std::log(t[i]), y = std::log(value[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  require(den > 0.0, "degenerate grid for slope fit");
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.t = t;
  fit.value = value;
  return fit;
}

std::vector<double> geometric_grid(double t_min, double t_max, double ratio) {
  require(t_min > 0.0 && t_max >= t_min && ratio > 1.0, "invalid geometric grid");
  std::vector<double> g;
  for (int j = 0;; ++j) {
    const double t = t_min * std::pow(ratio, j);
    if (t > t_max * (1.0 + 1e-12)) break;
    g.push_back(t);
  }
  return g;
}

std::vector<double> log_grid(double t_min, double t_max, int per_decade) {
  require(t_min > 0.0 && t_max > t_min && per_decade >= 1, "invalid log grid");
  const double decades = std::log10(t_max / t_min);
  const int n = std::max(1, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
  std::vector<double> g(n + 1);
  for (int j = 0; j <= n; ++j) g[j] = t_min * std::pow(t_max / t_min, double(j) / n);
  return g;
}

namespace {
void check_slope_grid(const std::vector<double>& g) {
  require(g.size() >= 4, "slope grid needs at least 4 points");
  for (size_t i = 0; i < g.size(); ++i) {
    require(g[i] >= 1.0, "slope grid must lie in [1, inf)");
    if (i > 0) require(g[i] > g[i - 1], "slope grid must be increasing");
  }
  const double ratio = g[1] / g[0];
  for (size_t i = 2; i < g.size(); ++i)
    require(std::abs(g[i] / g[i - 1] / ratio - 1.0) < 1e-6, "slope grid must be geometric");
}
}  // namespace

SlopeFit decay_slope_fit(int dim, double r, const std::vector<double>& t_grid) {
  check_slope_grid(t_grid);
  std::vector<double> v;
  for (double t : t_grid) v.push_back(kernel_norm(t, dim, r));
  return fit_loglog(t_grid, v);
}

double mass_residual(const RealSequence& f, double t, double p) {
  require(t > 0.0, "mass_residual requires t > 0");
  const RealSequence u = evolve(f, t);
  const HeatKernel G = heat_kernel(t, f.dim(), u.radius());
  return lp_norm(u - f.sum() * G.values, p);
}

double mass_slope_exponent(int dim, double p, double q) {
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  return -0.5 - 0.5 * dim * (1.0 / q - ip);
}

SlopeFit mass_slope_fit(const RealSequence& f, double p, double q, const std::vector<double>& t_grid) {
  const int N = f.dim();
  require(q >= 1.0 && (N == 1 || q < double(N) / (N - 1)), "mass theorem requires 1 <= q < N/(N-1)");
  require(q <= p, "mass theorem requires q <= p");
  require(std::abs(f.sum()) > 1e-12 * std::max(1.0, lp_norm(f, 1.0)),
          "mass theorem requires sum f != 0 (the residual then decays faster)");
  check_slope_grid(t_grid);
  std::vector<double> v;
  for (double t : t_grid) v.push_back(mass_residual(f, t, p));
  return fit_loglog(t_grid, v);
}

const char* to_string(Envelope e) {
  switch (e) {
    case Envelope::H: return "H";
    case Envelope::H2: return "H2";
    case Envelope::H3: return "H3";
  }
  return "?";
}

double smoothness_envelope(Envelope kind, double t, double z, int dim) {
  require(t > 0.0 && z > 0.0, "envelope requires t > 0 and z > 0");
  require(dim >= 1, "dimension must be >= 1");
  const double g = std::pow(scaled_bessel_i(z, 2.0 * t), dim);
  switch (kind) {
    case Envelope::H: return z / t * g;
    case Envelope::H2: return (1.0 / t + z * z / (t * t)) * g;
    case Envelope::H3: return (z / (t * t) + z * z * z / (t * t * t)) * g;
  }
  return 0.0;
}

RealSequence maximal_heat(const RealSequence& f, const std::vector<double>& t_grid) {
  require(!t_grid.empty(), "maximal operator needs a nonempty time grid");
  RealSequence m(f.window());
  for (double t : t_grid) {
    const RealSequence u = evolve(f, t, f.radius());
    m.values() = m.values().max(u.values().abs());
  }
  return m;
}

}  // namespace dha
