#include "dha/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace dha {

int l1_length(const Point& n) {
  int s = 0;
  for (int c : n) s += std::abs(c);
  return s;
}

Window::Window(int dim_, int radius_) : dim(dim_), radius(radius_) {
  require(dim >= 1, "dimension must be >= 1");
  require(radius >= 0, "radius must be >= 0");
}

Index Window::size() const {
  Index s = 1;
  for (int i = 0; i < dim; ++i) s *= side();
  return s;
}

Index Window::stride(int axis) const {
  Index s = 1;
  for (int i = axis + 1; i < dim; ++i) s *= side();
  return s;
}

bool Window::contains(const Point& n) const {
  if (static_cast<int>(n.size()) != dim) return false;
  for (int c : n)
    if (c < -radius || c > radius) return false;
  return true;
}

Index Window::index(const Point& n) const {
  Index idx = 0;
  for (int i = 0; i < dim; ++i) idx = idx * side() + (n[i] + radius);
  return idx;
}

Point Window::point(Index idx) const {
  Point p(dim);
  for (int i = dim - 1; i >= 0; --i) {
    p[i] = static_cast<int>(idx % side()) - radius;
    idx /= side();
  }
  return p;
}

RealSequence real_part(const ComplexSequence& f) {
  return RealSequence(f.window(), f.values().real());
}

RealSequence imag_part(const ComplexSequence& f) {
  return RealSequence(f.window(), f.values().imag());
}

ComplexSequence to_complex(const RealSequence& f) {
  return ComplexSequence(f.window(), f.values().cast<cdouble>());
}

Weight::Weight(RealSequence values) : values_(std::move(values)) {
  require(values_.all_finite() && (values_.values() > 0.0).all(), "weights must be finite and > 0");
}

Weight Weight::unit(int dim, int radius) {
  return Weight(RealSequence::constant(dim, radius, 1.0));
}

Weight Weight::power(double beta, int dim, int radius) {
  RealSequence v(dim, radius);
  for (Index i = 0; i < v.size(); ++i)
    v[i] = std::pow(1.0 + l1_length(v.window().point(i)), beta);
  return Weight(std::move(v));
}

Weight Weight::sigma(double sigma, int dim, int radius) {
  return power(2.0 * sigma - dim, dim, radius);
}

double Weight::at(const Point& n) const {
  require(values_.window().contains(n), "weight undefined at point");
  return values_[values_.window().index(n)];
}

namespace detail {

void check_weight(const Window& fw, const Weight* w) {
  if (!w) return;
  require(w->window().dim == fw.dim && w->window().radius >= fw.radius,
          "weight window must cover the sequence window");
}

void compositions(int k, int parts, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == parts - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, k);
}

}  // namespace detail

double weak_l1_norm_abs(const RealSequence& absf, const Weight* w) {
  detail::check_weight(absf.window(), w);
  std::vector<std::pair<double, double>> lv;
  lv.reserve(absf.size());
  for (Index i = 0; i < absf.size(); ++i) {
    if (absf[i] <= 0.0) continue;
    lv.emplace_back(absf[i], w ? w->at(absf.window().point(i)) : 1.0);
  }
  std::sort(lv.begin(), lv.end(), [](auto& a, auto& b) { return a.first > b.first; });
  double best = 0.0, mass = 0.0;
  for (size_t i = 0; i < lv.size(); ++i) {
    mass += lv[i].second;
    // level set {|f| >= v} is complete once the next value is strictly smaller
    if (i + 1 == lv.size() || lv[i + 1].first < lv[i].first) best = std::max(best, lv[i].first * mass);
  }
  return best;
}

namespace {

// N-dimensional inclusive prefix sums on a box of side s.
Eigen::ArrayXd prefix_sums(const Eigen::ArrayXd& v, int dim, int side) {
  const int ps = side + 1;
  Index total = 1;
  for (int i = 0; i < dim; ++i) total *= ps;
  Eigen::ArrayXd P = Eigen::ArrayXd::Zero(total);
  // copy into padded layout
  for (Index i = 0; i < v.size(); ++i) {
    Index rem = i, pi = 0, mul = 1;
    for (int a = dim - 1; a >= 0; --a) {
      pi += (rem % side + 1) * mul;
      rem /= side;
      mul *= ps;
    }
    P[pi] = v[i];
  }
  Index st = 1;
  for (int a = dim - 1; a >= 0; --a) {
    for (Index i = 0; i < total; ++i)
      if ((i / st) % ps > 0) P[i] += P[i - st];
    st *= ps;
  }
  return P;
}

double cube_sum(const Eigen::ArrayXd& P, int dim, int ps, const std::vector<int>& lo, int len) {
  double s = 0.0;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    Index idx = 0;
    int sign = 1;
    for (int a = 0; a < dim; ++a) {
      int c = lo[a] + len;  // exclusive upper corner in padded coords
      if (mask & (1 << a)) {
        c = lo[a];
        sign = -sign;
      }
      idx = idx * ps + c;
    }
    s += sign * P[idx];
  }
  return s;
}

}  // namespace

double ap_constant(const Weight& w, double p, int max_side) {
  require(p > 1.0, "ap_constant requires p > 1");
  require(max_side >= 1, "max_side must be >= 1");
  const Window& win = w.window();
  const int dim = win.dim, side = win.side(), ps = side + 1;
  const Eigen::ArrayXd& wv = w.values().values();
  const Eigen::ArrayXd dual = wv.pow(-1.0 / (p - 1.0));
  const Eigen::ArrayXd Pw = prefix_sums(wv, dim, side);
  const Eigen::ArrayXd Pd = prefix_sums(dual, dim, side);
  double best = 0.0;
  for (int len = 1; len <= std::min(max_side, side); ++len) {
    const int npos = side - len + 1;
    Index count = 1;
    for (int a = 0; a < dim; ++a) count *= npos;
    double vol = 1.0;
    for (int a = 0; a < dim; ++a) vol *= len;
    std::vector<int> lo(dim);
    for (Index c = 0; c < count; ++c) {
      Index rem = c;
      for (int a = dim - 1; a >= 0; --a) {
        lo[a] = static_cast<int>(rem % npos);
        rem /= npos;
      }
      const double aw = cube_sum(Pw, dim, ps, lo, len) / vol;
      const double ad = cube_sum(Pd, dim, ps, lo, len) / vol;
      best = std::max(best, aw * std::pow(ad, p - 1.0));
    }
  }
  return best;
}

}  // namespace dha
