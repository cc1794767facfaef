#include "dha/squarefn.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "dha/bessel.hpp"
#include "dha/errors.hpp"
#include "dha/heat.hpp"
#include "dha/parallel.hpp"
#include "dha/quadrature.hpp"

namespace dha {

TimeGridQuadrature::TimeGridQuadrature(double tmin, double tmax, int pd) : t_min(tmin), t_max(tmax), per_decade(pd) {
  t = log_grid(tmin, tmax, pd);
  const int n = static_cast<int>(t.size()) - 1;
  const double h = std::log(tmax / tmin) / n;
  log_weight.assign(t.size(), h);
  log_weight.front() = log_weight.back() = 0.5 * h;
}

std::vector<double> TimeGridQuadrature::weights(int k) const {
  std::vector<double> w(t.size());
  for (size_t i = 0; i < t.size(); ++i) w[i] = log_weight[i] * std::pow(t[i], 2.0 * k);
  return w;
}

double gk_identity_constant(int k) { return std::tgamma(2.0 * k) / std::pow(4.0, k); }

namespace {

void check_k(int k) {
  if (k < 1) throw DomainError("square functions require k >= 1");
}

double step(const TimeGridQuadrature& grid) { return std::log(grid.t[1] / grid.t[0]); }

// Assemble g^2 from per-t squared samples D_t(n)^2 in grid order. In tau = log t the integrand
// behaves like e^{2k tau} below t_min and e^{-decay tau} above t_max; the tails are integrated
// with those laws and the trapezoid gets the matching Euler-Maclaurin end correction.
SquareFunction assemble(const std::vector<Eigen::ArrayXd>& d2, const Window& w, int k,
                        const TimeGridQuadrature& grid, double decay) {
  const std::vector<double> wt = grid.weights(k);
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(w.size());
  for (size_t i = 0; i < d2.size(); ++i) acc += wt[i] * d2[i];
  const double h = step(grid);
  const Eigen::ArrayXd fa = std::pow(grid.t.front(), 2.0 * k) * d2.front();
  const Eigen::ArrayXd fb = std::pow(grid.t.back(), 2.0 * k) * d2.back();
  acc += h * h / 12.0 * (decay * fb + 2.0 * k * fa);
  SquareFunction out{RealSequence(w), RealSequence(w)};
  out.tail.values() = fa / (2.0 * k) + fb / decay;
  out.values.values() = (acc + out.tail.values()).sqrt();
  return out;
}

RealSequence laplacian_power(RealSequence u, int k) {
  for (int j = 0; j < k; ++j) u = laplacian(u);
  return u;
}

}  // namespace

SquareFunction gk(const RealSequence& f, int k, const TimeGridQuadrature& grid, int out_radius) {
  check_k(k);
  const int Ro = out_radius < 0 ? f.radius() : out_radius;
  const int Rw = Ro + k;
  const int conv = std::max(Rw, f.radius());
  const Window wo(f.dim(), Ro);
  std::vector<Eigen::ArrayXd> d2(grid.t.size());
  parallel_for(static_cast<Index>(grid.t.size()), [&](Index b, Index e) {
    for (Index i = b; i < e; ++i) {
      // W_t f is exact on radius Rw: the profile reaches every needed distance
      const RealSequence u = separable_convolve(f, heat_profile(grid.t[i], Rw + f.radius()), conv).resized(Rw);
      d2[i] = laplacian_power(u, k).resized(Ro).values().square();
    }
  });
  return assemble(d2, wo, k, grid, f.dim());
}

SquareFunction gk_poisson(const RealSequence& f, int k, const TimeGridQuadrature& grid, int out_radius,
                          int grid_size) {
  check_k(k);
  const int Ro = out_radius < 0 ? f.radius() : out_radius;
  const TorusGrid g(f.dim(), spectral_grid_size(std::max(Ro, f.radius()), grid_size));
  const Eigen::ArrayXcd F = dft(f, g);
  const Eigen::ArrayXd root = g.lambda().sqrt();
  const Eigen::ArrayXd base = (-2.0 * root).pow(k);
  const Window wo(f.dim(), Ro);
  std::vector<Eigen::ArrayXd> d2(grid.t.size());
  parallel_for(static_cast<Index>(grid.t.size()), [&](Index b, Index e) {
    for (Index i = b; i < e; ++i) {
      const Eigen::ArrayXcd S = F * (base * (-2.0 * grid.t[i] * root).exp()).cast<cdouble>();
      d2[i] = idft(S, g).crop(Ro).values().real().square();
    }
  });
  return assemble(d2, wo, k, grid, 2.0 * f.dim());
}

namespace {

SquareNorm assemble_norm(const std::vector<double>& s, int k, const TimeGridQuadrature& grid, double decay) {
  const std::vector<double> wt = grid.weights(k);
  SquareNorm n;
  for (size_t i = 0; i < s.size(); ++i) n.value += wt[i] * s[i];
  const double h = step(grid);
  const double fa = std::pow(grid.t.front(), 2.0 * k) * s.front();
  const double fb = std::pow(grid.t.back(), 2.0 * k) * s.back();
  n.value += h * h / 12.0 * (decay * fb + 2.0 * k * fa);
  n.lower_tail = fa / (2.0 * k);
  n.upper_tail = fb / decay;
  n.value += n.lower_tail + n.upper_tail;
  return n;
}

}  // namespace

namespace {

// h[j](m) = (1/pi) int_0^pi e^{-2s(1-cos th)} (-4 sin^2(th/2))^j cos(m th) d th = Delta^j g_s(m), m = 0..mmax.
// The integrand has one sign near the peak, so no cancellation between lattice values occurs.
std::vector<Eigen::ArrayXd> difference_profiles(double s, int jmax, int mmax) {
  const double top = s > 20.0 ? std::acos(1.0 - 40.0 / s) : std::numbers::pi;
  const int panels = static_cast<int>(std::ceil(top * (mmax + 8) / std::numbers::pi)) + 8;
  const auto& r = gauss_legendre(16);
  std::vector<Eigen::ArrayXd> h(jmax + 1, Eigen::ArrayXd::Zero(mmax + 1));
  const double w = top / panels;
  for (int p = 0; p < panels; ++p)
    for (int i = 0; i < 16; ++i) {
      const double th = (p + 0.5 * (1.0 + r.nodes[i])) * w;
      const double d = -4.0 * std::pow(std::sin(0.5 * th), 2);
      double c = 0.5 * w * r.weights[i] * std::exp(-2.0 * s * (1.0 - std::cos(th))) / std::numbers::pi;
      for (int j = 0; j <= jmax; ++j, c *= d)
        for (int m = 0; m <= mmax; ++m) h[j][m] += c * std::cos(m * th);
    }
  return h;
}

}  // namespace

SquareNorm gk_norm_squared(const RealSequence& f, int k, const TimeGridQuadrature& grid) {
  check_k(k);
  const int N = f.dim();
  const int Ra = 2 * f.radius();
  // autocorrelation A(m) = sum_a f(a) f(a - m)
  RealSequence flip(f.window());
  for (Index i = 0; i < f.size(); ++i) flip[f.size() - 1 - i] = f[i];
  const RealSequence A = convolve(f, flip);
  const Window& wa = A.window();
  std::vector<std::vector<int>> comp;
  detail::compositions(2 * k, N, comp);
  std::vector<double> multinom;
  for (const auto& c : comp) {
    double lg = std::lgamma(2.0 * k + 1.0);
    for (int j : c) lg -= std::lgamma(j + 1.0);
    multinom.push_back(std::round(std::exp(lg)));
  }
  std::vector<double> s(grid.t.size());
  parallel_for(static_cast<Index>(grid.t.size()), [&](Index b, Index e) {
    for (Index i = b; i < e; ++i) {
      // ||Delta^k W_t f||^2 = sum_m A(m) Delta^{2k} G_{2t}(m)
      const auto h = difference_profiles(2.0 * grid.t[i], 2 * k, Ra);
      double acc = 0.0;
      for (Index q = 0; q < wa.size(); ++q) {
        if (A[q] == 0.0) continue;
        double d = 0.0;
        for (size_t c = 0; c < comp.size(); ++c) {
          double v = multinom[c];
          for (int a = 0; a < N; ++a) v *= h[comp[c][a]][std::abs(wa.coord(q, a))];
          d += v;
        }
        acc += A[q] * d;
      }
      s[i] = acc;
    }
  });
  return assemble_norm(s, k, grid, 0.5 * N);
}

SquareNorm gk_poisson_norm_squared(const RealSequence& f, int k, const TimeGridQuadrature& grid, int grid_size) {
  check_k(k);
  int M = grid_size;
  if (M <= 0) {
    // the DC cell carries a relative error of order 1/M^N
    const int fine[] = {0, 65536, 256, 64};
    M = std::max(f.dim() <= 3 ? fine[f.dim()] : 16, spectral_grid_size(f.radius()));
  }
  const TorusGrid g(f.dim(), spectral_grid_size(f.radius(), M));
  const Eigen::ArrayXd F2 = dft(f, g).abs2();
  const Eigen::ArrayXd lam = g.lambda();
  const Eigen::ArrayXd m2 = (4.0 * lam).pow(k);
  const double inv = 1.0 / static_cast<double>(g.size());
  std::vector<double> s(grid.t.size());
  for (size_t i = 0; i < grid.t.size(); ++i)
    s[i] = inv * (F2 * m2 * (-4.0 * grid.t[i] * lam.sqrt()).exp()).sum();
  return assemble_norm(s, k, grid, f.dim());
}

TorusSymbol laplace_symbol(const TorusGrid& g, const TimeProfile& a, double a_bound) {
  if (!std::isfinite(a_bound) || a_bound <= 0.0)
    throw DomainError("Laplace-type multipliers require a bounded profile a (finite declared bound)");
  std::map<double, cdouble> cache;
  double seen = 0.0;
  auto value = [&](double x) -> cdouble {
    if (x == 0.0) return 0.0;
    auto it = cache.find(x);
    if (it != cache.end()) return it->second;
    // M(x) = int_0^inf e^{-v} a(v/x) dv with v = e^tau
    auto part = [&](bool imag) {
      return integrate_adaptive(
                 [&](double tau) {
                   const double v = std::exp(tau);
                   const cdouble av = a(v / x);
                   seen = std::max(seen, std::abs(av));
                   return std::exp(-v) * v * (imag ? av.imag() : av.real());
                 },
                 std::log(1e-20), std::log(50.0), 1e-15, 1e-14)
          .value;
    };
    const cdouble m(part(false), part(true));
    cache.emplace(x, m);
    return m;
  };
  TorusSymbol s = symbol_from(g, value, true, SymbolKind::laplace_type);
  if (seen > a_bound * (1.0 + 1e-12)) throw DomainError("profile a exceeds its declared bound");
  return s;
}

ComplexSequence laplace_multiplier_apply(const ComplexSequence& f, const TimeProfile& a, double a_bound,
                                         int out_radius, int grid_size) {
  const int Ro = out_radius < 0 ? f.radius() : out_radius;
  const TorusGrid g(f.dim(), spectral_grid_size(std::max(Ro, f.radius()), grid_size));
  return apply_multiplier(f, laplace_symbol(g, a, a_bound), Ro);
}

TimeProfile imaginary_power_profile(double gamma) {
  const cdouble c = 1.0 / complex_gamma(cdouble(1.0, -gamma));
  return [gamma, c](double t) { return c * std::exp(cdouble(0.0, -gamma * std::log(t))); };
}

double imaginary_power_bound(double gamma) { return 1.0 / std::abs(complex_gamma(cdouble(1.0, -gamma))); }

}  // namespace dha
