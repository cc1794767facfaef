#include "dha/subordination.hpp"

#include <cmath>
#include <numbers>

#include "dha/bessel.hpp"
#include "dha/errors.hpp"
#include "dha/heat.hpp"
#include "dha/parallel.hpp"
#include "dha/quadrature.hpp"
#include "dha/spectral.hpp"

namespace dha {

namespace {

constexpr double kUMin = 1e-28;
constexpr double kUMax = 45.0;

// Mass of the 1-D heat profile outside [-R, R].
double outside_1d(double s, int R, const Eigen::ArrayXd& g) {
  const double inside = g[0] + 2.0 * g.segment(1, R).sum();
  if (inside < 0.9) return 1.0 - inside;
  const int kbig = std::max(R + 1, static_cast<int>(std::ceil(std::sqrt(200.0 * s))) + 60);
  const Eigen::ArrayXd wide = heat_profile(s, kbig);
  double tail = 0.0;
  for (int k = kbig; k > R; --k) tail += 2.0 * wide[k];
  return tail;
}

// Per-node results are summed panel by panel, then panels in order, whatever the thread count.
template <typename Body>
Eigen::ArrayXd node_sum(const SubordinationQuadrature& q, Index len, int block, Body body) {
  const int n = q.size();
  const int blocks = (n + block - 1) / block;
  std::vector<Eigen::ArrayXd> part(blocks);
  parallel_for(blocks, [&](Index b, Index e) {
    for (Index k = b; k < e; ++k) {
      part[k] = Eigen::ArrayXd::Zero(len);
      for (int j = static_cast<int>(k) * block; j < std::min(n, static_cast<int>(k + 1) * block); ++j)
        body(j, part[k]);
    }
  });
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(len);
  for (const auto& p : part) out += p;
  return out;
}

}  // namespace

double SubordinationQuadrature::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

SubordinationQuadrature subordination_quadrature(double panel_width, int points) {
  require(panel_width > 0.0 && points >= 2, "invalid subordination quadrature");
  const double a = std::log(kUMin), b = std::log(kUMax);
  const int panels = static_cast<int>(std::ceil((b - a) / panel_width));
  const double h = (b - a) / panels;
  const auto& r = gauss_legendre(points);
  SubordinationQuadrature q;
  for (int p = 0; p < panels; ++p)
    for (int i = 0; i < points; ++i) {
      const double u = std::exp(a + (p + 0.5 * (1.0 + r.nodes[i])) * h);
      q.nodes.push_back(u);
      q.weights.push_back(0.5 * h * r.weights[i] * std::exp(-u) * std::sqrt(u));
    }
  return q;
}

double PoissonKernel::normalization_error() const { return std::abs(window_mass + outside_mass - 1.0); }

PoissonKernel poisson_kernel(double t, int dim, int radius, const SubordinationQuadrature& q) {
  require(t > 0.0, "Poisson kernel requires t > 0");
  require(dim >= 1 && radius >= 0, "invalid dimension or radius");
  PoissonKernel P;
  P.t = t;
  P.dim = dim;
  P.radius = radius;
  P.values = RealSequence(dim, radius);
  const Window& w = P.values.window();
  const double c = 1.0 / std::sqrt(std::numbers::pi);
  // last slot carries the mass outside the window
  const Eigen::ArrayXd acc = node_sum(q, w.size() + 1, 16, [&](int j, Eigen::ArrayXd& acc) {
    const double s = t * t / (4.0 * q.nodes[j]);
    const Eigen::ArrayXd g = heat_profile(s, radius);
    const double wj = c * q.weights[j];
    for (Index i = 0; i < w.size(); ++i) {
      double v = wj;
      for (int a = 0; a < dim; ++a) v *= g[std::abs(w.coord(i, a))];
      acc[i] += v;
    }
    acc[w.size()] += wj * -std::expm1(dim * std::log1p(-outside_1d(s, radius, g)));
  });
  P.values.values() = acc.head(w.size());
  P.outside_mass = acc[w.size()];
  P.window_mass = P.values.sum();
  return P;
}

RealSequence poisson_evolve(const RealSequence& f, double t, int out_radius, const SubordinationQuadrature& q) {
  require(t > 0.0, "Poisson semigroup requires t > 0");
  const int Ro = out_radius < 0 ? f.radius() : out_radius;
  const int span = Ro + f.radius();
  const Window wo(f.dim(), Ro);
  const double c = 1.0 / std::sqrt(std::numbers::pi);
  const int conv_radius = std::max(Ro, f.radius());
  RealSequence out(wo);
  out.values() = node_sum(q, wo.size(), 16, [&](int j, Eigen::ArrayXd& acc) {
    const double s = t * t / (4.0 * q.nodes[j]);
    const RealSequence u = separable_convolve(f, heat_profile(s, span), conv_radius);
    acc += c * q.weights[j] * (conv_radius == Ro ? u : u.resized(Ro)).values();
  });
  return out;
}

RealSequence laplace_residual(const RealSequence& f, double t, double h, int out_radius,
                              const SubordinationQuadrature& q) {
  require(h > 0.0 && t - h > 0.0, "Laplace residual requires 0 < h < t");
  const int Ro = out_radius < 0 ? f.radius() : out_radius;
  const RealSequence p0 = poisson_evolve(f, t, Ro + 1, q);
  const RealSequence pp = poisson_evolve(f, t + h, Ro, q);
  const RealSequence pm = poisson_evolve(f, t - h, Ro, q);
  const RealSequence lap = laplacian(p0).resized(Ro);
  RealSequence r(pp.window());
  r.values() = (pp.values() - 2.0 * p0.resized(Ro).values() + pm.values()) / (h * h) + lap.values();
  return r;
}

RealSequence maximal_poisson(const RealSequence& f, const std::vector<double>& t_grid,
                             const SubordinationQuadrature& q) {
  require(!t_grid.empty(), "maximal operator needs a nonempty time grid");
  RealSequence m(f.window());
  for (double t : t_grid) m.values() = m.values().max(poisson_evolve(f, t, f.radius(), q).values().abs());
  return m;
}

double poisson_symbol_discrepancy(const PoissonKernel& Q, int M) {
  const TorusGrid g(Q.dim, M);
  require(2 * Q.radius + 1 <= M, "grid too small for the kernel window");
  const ComplexSequence ref = idft(poisson_symbol(g, Q.t).values, g, Q.radius);
  return (ref.values().real() - Q.values.values()).abs().maxCoeff();
}

}  // namespace dha
