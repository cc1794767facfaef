#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <type_traits>
#include <vector>

#include "dha/errors.hpp"

namespace dha {

using Index = Eigen::Index;
using Point = std::vector<int>;
using cdouble = std::complex<double>;

// l1 length |n| = |n_1| + ... + |n_N|
int l1_length(const Point& n);

// Centered box {|n_i| <= radius} in Z^dim, stored row-major (last axis fastest).
struct Window {
  int dim = 1;
  int radius = 0;

  Window() = default;
  Window(int dim_, int radius_);

  int side() const { return 2 * radius + 1; }
  Index size() const;
  Index stride(int axis) const;
  bool contains(const Point& n) const;
  Index index(const Point& n) const;
  Point point(Index idx) const;
  int coord(Index idx, int axis) const {
    return static_cast<int>((idx / stride(axis)) % side()) - radius;
  }
  bool operator==(const Window& o) const { return dim == o.dim && radius == o.radius; }
  bool operator!=(const Window& o) const { return !(*this == o); }
};

template <typename Scalar>
class Sequence {
 public:
  using scalar_type = Scalar;
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Sequence() : Sequence(Window(1, 0)) {}
  explicit Sequence(const Window& w) : window_(w), values_(Values::Zero(w.size())) {}
  Sequence(int dim, int radius) : Sequence(Window(dim, radius)) {}
  Sequence(const Window& w, Values v) : window_(w), values_(std::move(v)) {
    require(values_.size() == w.size(), "value count does not match window size");
  }

  static Sequence delta(int dim, int radius, const Point& at = {}) {
    Sequence s(dim, radius);
    Point p = at.empty() ? Point(dim, 0) : at;
    require(s.window_.contains(p), "delta location outside window");
    s.values_[s.window_.index(p)] = Scalar(1);
    return s;
  }
  static Sequence constant(int dim, int radius, Scalar c) {
    Sequence s(dim, radius);
    s.values_.setConstant(c);
    return s;
  }

  const Window& window() const { return window_; }
  int dim() const { return window_.dim; }
  int radius() const { return window_.radius; }
  Index size() const { return values_.size(); }

  Values& values() { return values_; }
  const Values& values() const { return values_; }

  Scalar& operator[](Index i) { return values_[i]; }
  const Scalar& operator[](Index i) const { return values_[i]; }

  // Zero outside the window.
  Scalar at(const Point& n) const {
    return window_.contains(n) ? values_[window_.index(n)] : Scalar(0);
  }
  Scalar& ref(const Point& n) {
    require(window_.contains(n), "point outside window");
    return values_[window_.index(n)];
  }

  // Same lattice function on a window of a different radius (zero padded or cropped).
  Sequence resized(int new_radius) const {
    require(new_radius >= 0, "radius must be nonnegative");
    Sequence out(window_.dim, new_radius);
    const int r = std::min(new_radius, window_.radius);
    const int side = 2 * r + 1;
    Index count = 1;
    for (int i = 0; i < window_.dim; ++i) count *= side;
    Point p(window_.dim);
    for (Index c = 0; c < count; ++c) {
      Index rem = c;
      for (int i = window_.dim - 1; i >= 0; --i) {
        p[i] = static_cast<int>(rem % side) - r;
        rem /= side;
      }
      out.values_[out.window_.index(p)] = values_[window_.index(p)];
    }
    return out;
  }

  bool all_finite() const {
    if constexpr (std::is_same_v<Scalar, cdouble>)
      return values_.real().allFinite() && values_.imag().allFinite();
    else
      return values_.allFinite();
  }

  Scalar sum() const { return values_.sum(); }

  Sequence& operator+=(const Sequence& o) { check_same(o); values_ += o.values_; return *this; }
  Sequence& operator-=(const Sequence& o) { check_same(o); values_ -= o.values_; return *this; }
  Sequence& operator*=(Scalar c) { values_ *= c; return *this; }
  friend Sequence operator+(Sequence a, const Sequence& b) { return a += b; }
  friend Sequence operator-(Sequence a, const Sequence& b) { return a -= b; }
  friend Sequence operator*(Scalar c, Sequence a) { return a *= c; }
  friend Sequence operator*(Sequence a, Scalar c) { return a *= c; }

 private:
  void check_same(const Sequence& o) const {
    require(o.window_ == window_, "window mismatch");
  }

  Window window_;
  Values values_;
};

using RealSequence = Sequence<double>;
using ComplexSequence = Sequence<cdouble>;

RealSequence real_part(const ComplexSequence& f);
RealSequence imag_part(const ComplexSequence& f);
ComplexSequence to_complex(const RealSequence& f);

// Strictly positive weight on a window; zero-extension does not apply to weights.
class Weight {
 public:
  explicit Weight(RealSequence values);
  static Weight unit(int dim, int radius);
  // w(n) = (1+|n|)^{2 sigma - N}
  static Weight sigma(double sigma, int dim, int radius);
  // w(n) = (1+|n|)^{beta}
  static Weight power(double beta, int dim, int radius);

  const RealSequence& values() const { return values_; }
  const Window& window() const { return values_.window(); }
  double at(const Point& n) const;

 private:
  RealSequence values_;
};

// Difference operators with zero extension; output keeps the input window. Axes are 0-based.
template <typename S>
Sequence<S> forward_diff(const Sequence<S>& f, int axis) {
  const Window& w = f.window();
  require(axis >= 0 && axis < w.dim, "axis out of range");
  Sequence<S> out(w);
  const Index st = w.stride(axis);
  for (Index i = 0; i < w.size(); ++i) {
    const S next = w.coord(i, axis) < w.radius ? f[i + st] : S(0);
    out[i] = next - f[i];
  }
  return out;
}

template <typename S>
Sequence<S> backward_diff(const Sequence<S>& f, int axis) {
  const Window& w = f.window();
  require(axis >= 0 && axis < w.dim, "axis out of range");
  Sequence<S> out(w);
  const Index st = w.stride(axis);
  for (Index i = 0; i < w.size(); ++i) {
    const S prev = w.coord(i, axis) > -w.radius ? f[i - st] : S(0);
    out[i] = f[i] - prev;
  }
  return out;
}

template <typename S>
Sequence<S> laplacian(const Sequence<S>& f) {
  const Window& w = f.window();
  Sequence<S> out(w);
  out.values() = S(-2 * w.dim) * f.values();
  for (int axis = 0; axis < w.dim; ++axis) {
    const Index st = w.stride(axis);
    for (Index i = 0; i < w.size(); ++i) {
      const int c = w.coord(i, axis);
      if (c < w.radius) out[i] += f[i + st];
      if (c > -w.radius) out[i] += f[i - st];
    }
  }
  return out;
}

// Exact finite convolution on the full output window R_f + R_g (or cropped to crop_radius >= 0).
template <typename S>
Sequence<S> convolve(const Sequence<S>& f, const Sequence<S>& g, int crop_radius = -1) {
  require(f.dim() == g.dim(), "dimension mismatch in convolution");
  const int dim = f.dim();
  const Window out_w(dim, f.radius() + g.radius());
  Sequence<S> out(out_w);
  auto offsets = [&](const Window& w) {
    std::vector<Index> off(w.size());
    for (Index i = 0; i < w.size(); ++i) {
      Index o = 0;
      for (int a = 0; a < dim; ++a) o += (w.coord(i, a) + w.radius) * out_w.stride(a);
      off[i] = o;
    }
    return off;
  };
  const auto of = offsets(f.window());
  const auto og = offsets(g.window());
  for (Index i = 0; i < f.size(); ++i) {
    const S fi = f[i];
    if (fi == S(0)) continue;
    for (Index j = 0; j < g.size(); ++j) out[of[i] + og[j]] += fi * g[j];
  }
  return crop_radius >= 0 ? out.resized(crop_radius) : out;
}

// (f * g)(n) for |n|_inf <= out_radius only; g must cover radius out_radius + R_f.
template <typename S>
Sequence<S> convolve_to(const Sequence<S>& f, const Sequence<S>& g, int out_radius) {
  require(f.dim() == g.dim(), "dimension mismatch in convolution");
  require(g.radius() >= out_radius + f.radius(), "kernel window too small for the output");
  const int dim = f.dim();
  const Window ow(dim, out_radius);
  const Window& fw = f.window();
  const Window& gw = g.window();
  std::vector<Index> nz;
  for (Index i = 0; i < f.size(); ++i)
    if (f[i] != S(0)) nz.push_back(i);
  Sequence<S> out(ow);
  for (Index o = 0; o < ow.size(); ++o) {
    S acc = S(0);
    for (Index i : nz) {
      Index gi = 0;
      for (int a = 0; a < dim; ++a) gi += (ow.coord(o, a) - fw.coord(i, a) + gw.radius) * gw.stride(a);
      acc += f[i] * g[gi];
    }
    out[o] = acc;
  }
  return out;
}

namespace detail {
void check_weight(const Window& fw, const Weight* w);
}

// Weighted l^p norm; p = infinity ignores the weight.
template <typename S>
double lp_norm(const Sequence<S>& f, double p, const Weight* w = nullptr) {
  require(p >= 1.0, "lp_norm requires p >= 1");
  if (std::isinf(p)) return f.size() ? f.values().abs().maxCoeff() : 0.0;
  detail::check_weight(f.window(), w);
  double acc = 0.0;
  for (Index i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    if (a == 0.0) continue;
    const double ww = w ? w->at(f.window().point(i)) : 1.0;
    acc += (p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p))) * ww;
  }
  return p == 1.0 ? acc : (p == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / p));
}

double weak_l1_norm_abs(const RealSequence& absf, const Weight* w);

// sup over levels v of v * w({|f| >= v})
template <typename S>
double weak_l1_norm(const Sequence<S>& f, const Weight* w = nullptr) {
  RealSequence a(f.window(), f.values().abs().template cast<double>());
  return weak_l1_norm_abs(a, w);
}

// Hoelder seminorm of order k >= 0 and exponent alpha in (0,1].
template <typename S>
double holder_seminorm(const Sequence<S>& f, double alpha, int k = 0);

// Muckenhoupt A_p characteristic over axis-aligned cubes of side <= max_side inside the window.
double ap_constant(const Weight& w, double p, int max_side);

namespace detail {
template <typename S>
double holder_pairs(const Sequence<S>& f, double alpha, int box_radius) {
  const Window& w = f.window();
  std::vector<Index> idx;
  std::vector<Point> pts;
  for (Index i = 0; i < w.size(); ++i) {
    Point p = w.point(i);
    bool in = true;
    for (int c : p) in = in && std::abs(c) <= box_radius;
    if (in) {
      idx.push_back(i);
      pts.push_back(std::move(p));
    }
  }
  double best = 0.0;
  for (size_t a = 0; a < idx.size(); ++a) {
    for (size_t b = a + 1; b < idx.size(); ++b) {
      const double d = std::abs(f[idx[a]] - f[idx[b]]);
      if (d == 0.0) continue;
      int dist = 0;
      for (int c = 0; c < w.dim; ++c) dist += std::abs(pts[a][c] - pts[b][c]);
      const double r = d / (alpha == 1.0 ? double(dist) : std::pow(double(dist), alpha));
      best = std::max(best, r);
    }
  }
  return best;
}

void compositions(int k, int parts, std::vector<std::vector<int>>& out);
}  // namespace detail

template <typename S>
double holder_seminorm(const Sequence<S>& f, double alpha, int k) {
  require(alpha > 0.0 && alpha <= 1.0, "holder_seminorm requires 0 < alpha <= 1");
  require(k >= 0, "holder order must be nonnegative");
  if (k == 0) return detail::holder_pairs(f, alpha, f.radius());
  // differenced values are uncontaminated by the truncation only on the box of radius R - k
  const int inner = f.radius() - k;
  if (inner < 0) return 0.0;
  std::vector<std::vector<int>> multi;
  detail::compositions(k, f.dim(), multi);
  double total = 0.0;
  for (const auto& m : multi) {
    Sequence<S> g = f;
    for (int axis = 0; axis < f.dim(); ++axis)
      for (int j = 0; j < m[axis]; ++j) g = forward_diff(g, axis);
    total += detail::holder_pairs(g, alpha, inner);
  }
  return total;
}

}  // namespace dha
