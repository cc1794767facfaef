#include "dha/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <vector>

#include "dha/errors.hpp"

namespace dha {

namespace {

constexpr double kPi = std::numbers::pi;

// In-place transform along every axis of an M^N row-major block; sign -1 is e^{-2 pi i},
// sign +1 is e^{+2 pi i}; both unscaled.
void fft_nd(Eigen::ArrayXcd& data, int dim, int M, int sign) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cdouble> in(M), out(M);
  const Index total = data.size();
  Index st = 1;
  for (int axis = dim - 1; axis >= 0; --axis) {
    for (Index base = 0; base < total; ++base) {
      if ((base / st) % M != 0) continue;
      for (int j = 0; j < M; ++j) in[j] = data[base + j * st];
      if (sign < 0)
        fft.fwd(out, in);
      else
        fft.inv(out, in);
      for (int j = 0; j < M; ++j) data[base + j * st] = out[j];
    }
    st *= M;
  }
}

Index torus_index(const Point& n, int M) {
  Index idx = 0;
  for (int c : n) idx = idx * M + ((c % M) + M) % M;
  return idx;
}

int parity(Index idx, int dim, int M) {
  int s = 0;
  for (int a = 0; a < dim; ++a) {
    s += static_cast<int>(idx % M);
    idx /= M;
  }
  return s & 1;
}

}  // namespace

TorusGrid::TorusGrid(int dim_, int M_) : dim(dim_), M(M_) {
  require(dim >= 1, "torus grid dimension must be >= 1");
  require(M >= 2 && M % 2 == 0, "torus grid size M must be even and >= 2");
}

Index TorusGrid::size() const {
  Index s = 1;
  for (int i = 0; i < dim; ++i) s *= M;
  return s;
}

Eigen::ArrayXd TorusGrid::coordinate(int axis) const {
  Eigen::ArrayXd c(size());
  Index st = 1;
  for (int i = axis + 1; i < dim; ++i) st *= M;
  for (Index i = 0; i < size(); ++i) c[i] = node(static_cast<int>((i / st) % M));
  return c;
}

Eigen::ArrayXd TorusGrid::lambda() const {
  std::vector<double> s2(M);
  for (int j = 0; j < M; ++j) {
    const double s = std::sin(kPi * node(j));
    s2[j] = s * s;
  }
  Eigen::ArrayXd l = Eigen::ArrayXd::Zero(size());
  for (Index i = 0; i < size(); ++i) {
    Index rem = i;
    double acc = 0.0;
    for (int a = 0; a < dim; ++a) {
      acc += s2[rem % M];
      rem /= M;
    }
    l[i] = acc;
  }
  return l;
}

Index TorusGrid::dc_index() const {
  Index idx = 0;
  for (int a = 0; a < dim; ++a) idx = idx * M + M / 2;
  return idx;
}

int smooth_size(int n) {
  for (int m = std::max(n, 2);; ++m) {
    if (m % 2) continue;
    int r = m;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

int default_grid_size(int radius) { return smooth_size(4 * (2 * radius + 1)); }

const char* to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::identity: return "identity";
    case SymbolKind::heat: return "heat";
    case SymbolKind::poisson: return "poisson";
    case SymbolKind::riesz: return "riesz";
    case SymbolKind::riesz_bar: return "riesz_bar";
    case SymbolKind::frac_neg: return "frac_neg";
    case SymbolKind::frac_pos: return "frac_pos";
    case SymbolKind::laplace_type: return "laplace_type";
    case SymbolKind::imaginary_power: return "imaginary_power";
    case SymbolKind::custom: return "custom";
  }
  return "?";
}

Eigen::ArrayXcd dft(const ComplexSequence& f, const TorusGrid& g) {
  require(f.dim() == g.dim, "grid dimension mismatch");
  require(g.M >= f.window().side(), "torus grid too small for the window");
  Eigen::ArrayXcd data = Eigen::ArrayXcd::Zero(g.size());
  const Window& w = f.window();
  for (Index i = 0; i < w.size(); ++i) {
    if (f[i] == cdouble(0)) continue;
    const Point p = w.point(i);
    data[torus_index(p, g.M)] = (l1_length(p) & 1) ? -f[i] : f[i];
  }
  fft_nd(data, g.dim, g.M, +1);
  return data;
}

Eigen::ArrayXcd dft(const RealSequence& f, const TorusGrid& g) { return dft(to_complex(f), g); }

TorusField idft(const Eigen::ArrayXcd& samples, const TorusGrid& g) {
  require(samples.size() == g.size(), "sample count does not match the grid");
  TorusField field{g, samples};
  fft_nd(field.values, g.dim, g.M, -1);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (Index i = 0; i < field.values.size(); ++i)
    field.values[i] *= parity(i, g.dim, g.M) ? -scale : scale;
  return field;
}

ComplexSequence idft(const Eigen::ArrayXcd& samples, const TorusGrid& g, int radius) {
  return idft(samples, g).crop(radius);
}

ComplexSequence TorusField::crop(int radius) const {
  require(2 * radius + 1 <= grid.M, "crop radius exceeds one period");
  ComplexSequence out(grid.dim, radius);
  const Window& w = out.window();
  for (Index i = 0; i < w.size(); ++i) out[i] = values[torus_index(w.point(i), grid.M)];
  return out;
}

double TorusField::l2_norm() const { return std::sqrt(values.abs2().sum()); }

TorusSymbol identity_symbol(const TorusGrid& g) {
  return {g, Eigen::ArrayXcd::Ones(g.size()), SymbolKind::identity};
}

TorusSymbol heat_symbol(const TorusGrid& g, double t) {
  require(t >= 0.0, "heat symbol requires t >= 0");
  return {g, (-4.0 * t * g.lambda()).exp().cast<cdouble>(), SymbolKind::heat};
}

TorusSymbol poisson_symbol(const TorusGrid& g, double t) {
  require(t >= 0.0, "poisson symbol requires t >= 0");
  return {g, (-2.0 * t * g.lambda().sqrt()).exp().cast<cdouble>(), SymbolKind::poisson};
}

namespace {
TorusSymbol riesz_like(const TorusGrid& g, int axis, bool bar) {
  require(g.dim >= 2, "Riesz transforms require N >= 2");
  require(axis >= 0 && axis < g.dim, "axis out of range");
  const Eigen::ArrayXd lam = g.lambda();
  const Eigen::ArrayXd x = g.coordinate(axis);
  TorusSymbol s{g, Eigen::ArrayXcd::Zero(g.size()), bar ? SymbolKind::riesz_bar : SymbolKind::riesz};
  const cdouble I(0.0, 1.0);
  for (Index i = 0; i < g.size(); ++i) {
    if (lam[i] == 0.0) continue;
    const double sn = std::sin(kPi * x[i]) / std::sqrt(lam[i]);
    s.values[i] = -I * std::exp((bar ? 1.0 : -1.0) * I * kPi * x[i]) * sn;
  }
  return s;
}
}  // namespace

TorusSymbol riesz_symbol(const TorusGrid& g, int axis) { return riesz_like(g, axis, false); }
TorusSymbol riesz_bar_symbol(const TorusGrid& g, int axis) { return riesz_like(g, axis, true); }

TorusSymbol frac_neg_symbol(const TorusGrid& g, double sigma) {
  require(sigma > 0.0 && 2.0 * sigma < g.dim, "negative power requires 0 < 2 sigma < N");
  return symbol_from(g, [sigma](double x) { return cdouble(std::pow(x, -sigma)); }, true,
                     SymbolKind::frac_neg);
}

TorusSymbol frac_pos_symbol(const TorusGrid& g, double s) {
  require(s > 0.0 && s < 1.0, "fractional power requires 0 < s < 1");
  return symbol_from(g, [s](double x) { return cdouble(x > 0.0 ? std::pow(x, s) : 0.0); }, false,
                     SymbolKind::frac_pos);
}

TorusSymbol imaginary_power_symbol(const TorusGrid& g, double gamma) {
  return symbol_from(g, [gamma](double x) { return std::exp(cdouble(0.0, gamma * std::log(x))); }, true,
                     SymbolKind::imaginary_power);
}

TorusSymbol symbol_from(const TorusGrid& g, const std::function<cdouble(double)>& m, bool zero_dc,
                        SymbolKind kind) {
  const Eigen::ArrayXd lam = g.lambda();
  TorusSymbol s{g, Eigen::ArrayXcd::Zero(g.size()), kind};
  for (Index i = 0; i < g.size(); ++i) {
    if (lam[i] == 0.0 && zero_dc) continue;
    s.values[i] = m(4.0 * lam[i]);
  }
  return s;
}

TorusField apply_multiplier_field(const ComplexSequence& f, const TorusSymbol& sym) {
  require(sym.grid.M >= 2 * f.window().side(), "torus grid must be at least twice the window diameter");
  Eigen::ArrayXcd F = dft(f, sym.grid);
  F *= sym.values;
  return idft(F, sym.grid);
}

ComplexSequence apply_multiplier(const ComplexSequence& f, const TorusSymbol& sym, int out_radius) {
  return apply_multiplier_field(f, sym).crop(out_radius < 0 ? f.radius() : out_radius);
}

RealSequence apply_multiplier_real(const RealSequence& f, const TorusSymbol& sym, int out_radius) {
  const ComplexSequence c = apply_multiplier(to_complex(f), sym, out_radius);
  const double scale = std::max(c.values().abs().maxCoeff(), lp_norm(f, 2.0));
  const double resid = c.values().imag().abs().maxCoeff();
  require(resid <= 1e-10 * std::max(scale, 1e-300), "multiplier output is not real");
  return real_part(c);
}

const char* to_string(Path p) { return p == Path::kernel ? "kernel" : "spectral"; }

int spectral_grid_size(int radius, int requested) {
  const int side = 2 * radius + 1;
  if (requested > 0) {
    require(requested % 2 == 0 && requested >= 2 * side, "grid size must be even and >= 2 (2R+1)");
    return requested;
  }
  return default_grid_size(radius);
}

cdouble complex_gamma(cdouble z) {
  static const double p[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
  z -= 1.0;
  cdouble x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + double(i));
  const cdouble t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace dha
