#include "dha/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dha/bessel.hpp"
#include "dha/errors.hpp"
#include "dha/fractional.hpp"
#include "dha/heat.hpp"
#include "dha/parallel.hpp"
#include "dha/quadrature.hpp"
#include "dha/riesz.hpp"
#include "dha/spectral.hpp"
#include "dha/squarefn.hpp"

#ifndef DHA_VERSION
#define DHA_VERSION "0.0.0"
#endif

namespace dha {

using nlohmann::json;

// ---------------------------------------------------------------------------------------------
// fixtures

const CalibratedConstant* Fixture::find(const std::string& id) const {
  for (const auto& c : constants)
    if (c.id == id) return &c;
  return nullptr;
}

void Fixture::set(const CalibratedConstant& c) {
  for (auto& e : constants)
    if (e.id == c.id) {
      e = c;
      return;
    }
  constants.push_back(c);
  std::sort(constants.begin(), constants.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
}

namespace {

json to_json(const CalibratedConstant& c) {
  json j{{"id", c.id},         {"domain", c.domain}, {"grid", c.grid},     {"C", c.C},
         {"safety", c.safety}, {"seed", c.seed},     {"points", c.points}, {"tool_version", c.tool_version}};
  if (c.K > 0.0) j["K"] = c.K;
  return j;
}

}  // namespace

std::string fixture_json(const Fixture& f) {
  json arr = json::array();
  for (const auto& c : f.constants) arr.push_back(to_json(c));
  return json{{"version", f.version}, {"tool_version", f.tool_version}, {"constants", arr}}.dump(2) + "\n";
}

Fixture read_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open fixture file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("malformed fixture file " + path + ": " + e.what());
  }
  Fixture f;
  f.version = j.value("version", 1);
  f.tool_version = j.value("tool_version", std::string());
  for (const auto& e : j.at("constants")) {
    CalibratedConstant c;
    c.id = e.at("id").get<std::string>();
    c.domain = e.value("domain", std::string());
    c.grid = e.value("grid", std::string());
    c.C = e.at("C").get<double>();
    c.K = e.value("K", 0.0);
    c.safety = e.value("safety", 1.0);
    c.seed = e.value("seed", std::uint64_t{0});
    c.points = e.value("points", 0);
    c.tool_version = e.value("tool_version", std::string());
    if (!(c.C > 0.0)) throw DomainError("fixture constant for " + c.id + " must be positive");
    f.constants.push_back(c);
  }
  return f;
}

void write_fixture(const Fixture& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write fixture file " + path);
  out << fixture_json(f);
}

// ---------------------------------------------------------------------------------------------
// sampling helpers

namespace {

using Rng = std::mt19937_64;
using Case = std::function<Sample()>;

double unit(Rng& r) { return static_cast<double>(r() >> 11) * 0x1.0p-53; }
double uniform(Rng& r, double a, double b) { return a + (b - a) * unit(r); }
double log_uniform(Rng& r, double a, double b) { return std::exp(uniform(r, std::log(a), std::log(b))); }
int pick(Rng& r, int n) { return static_cast<int>(r() % static_cast<std::uint64_t>(n)); }
int pick(Rng& r, int lo, int hi) { return lo + pick(r, hi - lo + 1); }
template <typename T>
const T& choose(Rng& r, const std::vector<T>& v) {
  return v[pick(r, static_cast<int>(v.size()))];
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string point_str(const Point& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

Point random_point(Rng& r, int dim, int bound) {
  Point p(dim);
  for (auto& c : p) c = pick(r, -bound, bound);
  return p;
}

// Point in a box whose radius is log-uniform in [0, bound], so small |n| is sampled as densely
// as the far field.
Point multiscale_point(Rng& r, int dim, int bound) {
  const int b = std::min(bound, static_cast<int>(std::exp(uniform(r, 0.0, std::log(bound + 1.0)))));
  return random_point(r, dim, b);
}

// A displacement d with |d| = len made of unit steps on random axes.
Point random_step(Rng& r, int dim, int len) {
  Point d(dim, 0);
  for (int j = 0; j < len; ++j) d[pick(r, dim)] += (r() & 1) ? 1 : -1;
  return d;
}

Point add(Point a, const Point& b, int sign = 1) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += sign * b[i];
  return a;
}

Point unit_vector(int dim, int axis) {
  Point e(dim, 0);
  e[axis] = 1;
  return e;
}

// Random pair (n, m) with |n| > 2|n - m| >= 2 inside the box of radius bound.
bool admissible_pair(Rng& r, int dim, int bound, Point& n, Point& m) {
  for (int tries = 0; tries < 100; ++tries) {
    n = multiscale_point(r, dim, bound);
    const int len = l1_length(n);
    if (len < 3) continue;
    Point d = random_step(r, dim, pick(r, 1, (len - 1) / 2));
    const int dl = l1_length(d);
    if (dl == 0 || len <= 2 * dl) continue;
    m = add(n, d, -1);
    bool inside = true;
    for (int c : m) inside = inside && std::abs(c) <= bound;
    if (inside) return true;
  }
  return false;
}

RealSequence random_sequence(Rng& r, int dim, int radius, double lo = -1.0, double hi = 1.0) {
  RealSequence f(dim, radius);
  for (Index i = 0; i < f.size(); ++i) f[i] = uniform(r, lo, hi);
  return f;
}

double heat_value(double t, const Point& n) {
  double v = 1.0;
  for (int c : n) v *= scaled_bessel_int(c, 2.0 * t);
  return v;
}

// ---------------------------------------------------------------------------------------------
// kernel banks shared by samples (built once, read-only afterwards)

struct FracBank {
  std::vector<FracKernel> neg;  // K_sigma
  std::vector<FracKernel> pos;  // K_s
};

const FracBank& frac_bank() {
  static const FracBank bank = [] {
    FracBank b;
    for (double sg : {0.1, 0.25, 0.4}) b.neg.push_back(frac_integral_kernel(sg, 1, 400));
    for (double sg : {0.25, 0.5, 0.75}) b.neg.push_back(frac_integral_kernel(sg, 2, 48));
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) b.pos.push_back(frac_power_kernel(s, 1, 400));
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) b.pos.push_back(frac_power_kernel(s, 2, 32));
    return b;
  }();
  return bank;
}

// small positive-power kernels for the principle checks, radius 6 = 2 x data radius 3
const std::vector<FracKernel>& principle_bank() {
  static const std::vector<FracKernel> bank = [] {
    std::vector<FracKernel> b;
    for (int N : {1, 2})
      for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) b.push_back(frac_power_kernel(s, N, 6));
    return b;
  }();
  return bank;
}

const std::vector<RieszKernel>& riesz_bank() {
  static const std::vector<RieszKernel> bank = [] {
    std::vector<RieszKernel> b;
    for (int i = 0; i < 2; ++i) b.push_back(riesz_kernel(i, 2, 40));
    for (int i = 0; i < 3; ++i) b.push_back(riesz_kernel(i, 3, 10));
    return b;
  }();
  return bank;
}

const TimeGridQuadrature& square_grid() {
  static const TimeGridQuadrature g(1e-4, 1e4, 16);
  return g;
}

// ---------------------------------------------------------------------------------------------
// registry

constexpr double kExplicitTol = 1e-12;

struct Entry {
  InequalityInfo info;
  std::function<std::vector<Case>(Rng&, int)> cases;
};

template <typename Gen>
std::vector<Case> repeat(Rng& r, int count, Gen gen) {
  std::vector<Case> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(gen(r));
  return out;
}

// Bessel ---------------------------------------------------------------------------------------

Case bessel_case(Rng& r, BesselInequality kind) {
  BesselPoint p;
  p.x = log_uniform(r, 1e-3, 1e4);
  switch (kind) {
    case BesselInequality::amgm: {
      const int n = pick(r, 2, 4);
      for (int i = 0; i < n; ++i) p.orders.push_back(uniform(r, -0.99, 20.0));
      break;
    }
    case BesselInequality::diff1:
    case BesselInequality::ratio_bounds:
      p.a = uniform(r, -0.99, 50.0);
      break;
    case BesselInequality::uniform_bound:
      p.alpha = uniform(r, -0.5, 2.0);
      p.a = p.alpha + uniform(r, 1e-3, 50.0);
      p.a = std::max(p.a, -0.5 + 1e-9);
      break;
    default:
      p.a = uniform(r, -0.5, 50.0);
  }
  return [kind, p] {
    std::string where = fmt("a=%.6g x=%.6g", p.a, p.x);
    switch (kind) {
      case BesselInequality::amgm: {
        where = "orders=";
        for (double o : p.orders) where += fmt("%.6g ", o);
        where += fmt("x=%.6g", p.x);
        return Sample{inequality_margin(kind, p) + kExplicitTol * p.orders.size(), where};
      }
      case BesselInequality::diff1: {
        const auto t = inequality_terms(kind, p);
        // absolute slack for 1 - r near a = -1/2, where I_a - I_{a+1} is below one ulp of I_a
        return Sample{(std::min(t.lhs, t.structure - t.lhs) + 1e-15) / t.structure, where};
      }
      case BesselInequality::diff2: {
        const auto t = inequality_terms(kind, p);
        return Sample{1.0 - t.lhs / t.structure, where};
      }
      case BesselInequality::ratio_bounds:
        return Sample{inequality_margin(kind, p), where};
      case BesselInequality::uniform_bound:
        where += fmt(" alpha=%.6g", p.alpha);
        [[fallthrough]];
      default: {
        const auto t = inequality_terms(kind, p);
        return Sample{t.lhs / t.structure, where};
      }
    }
  };
}

// sum_k e^{-t} I_k(t) = 1. The k = 0 term comes from the cosine integral; the other terms from
// consecutive ratios, which do not depend on how the sequence is normalized.
Case sum_l1_case(Rng& r) {
  const double t = log_uniform(r, 1e-3, 1e3);
  return [t] {
    const auto g0 = integrate_adaptive(
        [t](double th) { return std::exp(-t * (1.0 - std::cos(th))) / std::numbers::pi; }, 0.0, std::numbers::pi,
        1e-17, 1e-15);
    const int kmax = static_cast<int>(t + 40.0 * std::sqrt(t + 1.0) + 40.0);
    const Eigen::ArrayXd s = scaled_bessel_sequence(kmax, t);
    double prod = 1.0, acc = 1.0;
    for (int k = 1; k <= kmax && s[k] > 0.0; ++k) {
      prod *= s[k] / s[k - 1];
      acc += 2.0 * prod;
      if (prod < 1e-20) break;
    }
    const double total = g0.value * acc;
    return Sample{kExplicitTol - std::abs(total - 1.0), fmt("t=%.6g sum=%.17g", t, total)};
  };
}

// Heat -----------------------------------------------------------------------------------------

Case size_g_case(Rng& r) {
  const int N = pick(r, 1, 3);
  const double t = log_uniform(r, 1e-2, 1e4);
  const Point n = random_point(r, N, static_cast<int>(std::ceil(2.0 * std::sqrt(t))));
  return [N, t, n] {
    return Sample{std::pow(t, 0.5 * N) * heat_value(t, n), fmt("N=%d t=%.6g n=", N, t) + point_str(n)};
  };
}

Case decay_g_case(Rng& r) {
  const int N = pick(r, 1, 3);
  const double t = log_uniform(r, 1e-2, 1e4);
  const Point n = multiscale_point(r, N, 200);
  return [N, t, n] {
    return Sample{std::pow(1.0 + l1_length(n), N) * heat_value(t, n), fmt("N=%d t=%.6g n=", N, t) + point_str(n)};
  };
}

constexpr double kSmoothK = 6.0;  // K = 6N in the heat smoothness lemmas

Case smooth_g_case(Rng& r, Envelope kind) {
  for (;;) {
    const int N = pick(r, 1, 3);
    const double t = log_uniform(r, 0.1, 1e3);
    const int axis = pick(r, N);
    Point n, m;
    if (!admissible_pair(r, N, std::max(3, static_cast<int>(std::ceil(4.0 * std::sqrt(t)))), n, m)) continue;
    const double z = (l1_length(n) + l1_length(m)) / (kSmoothK * N);
    const double structure = l1_length(add(n, m, -1)) * smoothness_envelope(kind, t, z, N);
    if (!(structure > 1e-280)) continue;
    return [=] {
      const Point e = unit_vector(N, axis);
      auto part = [&](const Point& p) {
        switch (kind) {
          case Envelope::H: return heat_value(t, p);
          case Envelope::H2: return heat_value(t, add(p, e)) - heat_value(t, p);
          default: return heat_value(t, add(p, e)) - 2.0 * heat_value(t, p) + heat_value(t, add(p, e, -1));
        }
      };
      const double lhs = std::abs(part(n) - part(m));
      return Sample{lhs / structure, fmt("N=%d t=%.6g i=%d n=", N, t, axis + 1) + point_str(n) + " m=" + point_str(m)};
    };
  }
}

Case maximal_heat_case(Rng& r) {
  const int N = pick(r, 1, 2);
  const RealSequence f = random_sequence(r, N, 4);
  return [N, f] {
    const RealSequence w = maximal_heat(f, log_grid(1e-2, 1e3, 8));
    return Sample{lp_norm(w, 2.0) / lp_norm(f, 2.0), fmt("N=%d random f on radius 4", N)};
  };
}

// Fractional -----------------------------------------------------------------------------------

Case frac_bound_case(Rng& r, bool kernel_form) {
  const auto& bank = kernel_form ? frac_bank().pos : frac_bank().neg;
  const FracKernel* K = &bank[pick(r, static_cast<int>(bank.size()))];
  Point n = multiscale_point(r, K->dim, K->radius());
  if (kernel_form && l1_length(n) == 0) n[0] = 1;
  return [K, n, kernel_form] {
    const double v = K->values.at(n);
    const double len = l1_length(n);
    const int N = K->dim;
    const double e = K->exponent;
    double ratio;
    if (!(v > 0.0)) {
      ratio = std::numeric_limits<double>::infinity();
    } else if (kernel_form) {
      ratio = v * std::pow(len, N + 2.0 * e) * std::abs(std::tgamma(-e)) / (1.0 / (1.0 - e) + 2.0 / (N + 2.0 * e));
    } else {
      ratio = v * std::pow(len + 1.0, N - 2.0 * e);
    }
    return Sample{ratio, fmt("N=%d %s=%.3g n=", N, kernel_form ? "s" : "sigma", e) + point_str(n)};
  };
}

Case frac_smooth_case(Rng& r, bool second) {
  const auto& bank = frac_bank().neg;
  const FracKernel* K = &bank[pick(r, static_cast<int>(bank.size()))];
  const int N = K->dim;
  const int axis = pick(r, N);
  Point n, m;
  while (!admissible_pair(r, N, K->radius() - 1, n, m)) {
  }
  return [K, N, axis, n, m, second] {
    const Point e = unit_vector(N, axis);
    const double d = l1_length(add(n, m, -1));
    const double s = l1_length(n) + l1_length(m);
    const double lhs = second ? std::abs(K->values.at(add(n, e)) - K->values.at(n) - K->values.at(add(m, e)) +
                                         K->values.at(m))
                              : std::abs(K->values.at(n) - K->values.at(m));
    const double structure = d / std::pow(s, N + (second ? 2.0 : 1.0) - 2.0 * K->exponent);
    return Sample{lhs / structure,
                  fmt("N=%d sigma=%.3g i=%d n=", N, K->exponent, axis + 1) + point_str(n) + " m=" + point_str(m)};
  };
}

// random f >= 0 on radius 3 (about half the entries zero) with f(n0) = 0
RealSequence sparse_nonneg(Rng& r, int N, const Point& n0) {
  RealSequence f(N, 3);
  for (Index i = 0; i < f.size(); ++i) f[i] = (r() & 1) ? uniform(r, 0.0, 1.0) : 0.0;
  f.ref(n0) = 0.0;
  return f;
}

Case max_principle_case(Rng& r) {
  const auto& bank = principle_bank();
  const FracKernel* K = &bank[pick(r, static_cast<int>(bank.size()))];
  const Point n0 = random_point(r, K->dim, 3);
  RealSequence f = sparse_nonneg(r, K->dim, n0);
  if (pick(r, 20) == 0) f.values().setZero();
  return [K, n0, f] {
    const double v = maximum_principle_check(f, n0, *K);
    return Sample{kExplicitTol - v, fmt("N=%d s=%.3g n0=", K->dim, K->exponent) + point_str(n0) +
                                        fmt(" value=%.6g", v)};
  };
}

Case comparison_case(Rng& r) {
  const auto& bank = principle_bank();
  const FracKernel* K = &bank[pick(r, static_cast<int>(bank.size()))];
  const Point n0 = random_point(r, K->dim, 3);
  const RealSequence g = random_sequence(r, K->dim, 3);
  const RealSequence f = g + sparse_nonneg(r, K->dim, n0);
  return [K, n0, f, g] {
    const double v = comparison_principle_check(f, g, n0, *K);
    return Sample{kExplicitTol - v, fmt("N=%d s=%.3g n0=", K->dim, K->exponent) + point_str(n0) +
                                        fmt(" value=%.6g", v)};
  };
}

Case schauder_case(Rng& r, SchauderMode mode) {
  const int N = pick(r, 1, 2);
  const int R = N == 1 ? 16 : 5;
  double sigma, alpha = 0.0;
  if (mode == SchauderMode::c) {
    sigma = choose(r, std::vector<double>{0.1, 0.25, 0.4});
  } else {
    alpha = choose(r, std::vector<double>{0.1, 0.2});
    sigma = alpha == 0.2 ? choose(r, std::vector<double>{0.1, 0.25}) : choose(r, std::vector<double>{0.1, 0.25, 0.4});
  }
  RealSequence f = random_sequence(r, N, R);
  f *= 1.0 / lp_norm(f, INFINITY);
  return [=] {
    return Sample{schauder_ratio(f, sigma, mode, alpha), fmt("N=%d sigma=%.3g alpha=%.3g", N, sigma, alpha)};
  };
}

Case hls_case(Rng& r) {
  const int N = pick(r, 1, 2);
  const double sigma = N == 1 ? 0.25 : 0.5;
  const double q = 1.5, p = 6.0;
  const int R = N == 1 ? 8 : 3;
  RealSequence f = random_sequence(r, N, R);
  for (Index i = 0; i < f.size(); ++i)
    if (pick(r, 3) == 0) f[i] = 0.0;
  return [=] { return Sample{hls_ratio(f, sigma, p, q, R + (N == 1 ? 24 : 8)), fmt("N=%d sigma=%.3g p=6 q=1.5", N, sigma)}; };
}

// Riesz ----------------------------------------------------------------------------------------

Case riesz_size_case(Rng& r, bool smooth) {
  const auto& bank = riesz_bank();
  const RieszKernel* K = &bank[pick(r, static_cast<int>(bank.size()))];
  const int N = K->dim;
  Point n, m;
  if (smooth) {
    while (!admissible_pair(r, N, K->radius(), n, m)) {
    }
  } else {
    n = multiscale_point(r, N, K->radius());
  }
  return [K, N, n, m, smooth] {
    const std::string where = fmt("N=%d i=%d n=", N, K->axis + 1) + point_str(n);
    if (!smooth) return Sample{std::abs(K->values.at(n)) * std::pow(l1_length(n) + 1.0, N), where};
    const double d = l1_length(add(n, m, -1));
    const double lhs = std::abs(K->values.at(n) - K->values.at(m));
    return Sample{lhs * std::pow(l1_length(n) + l1_length(m), N + 1.0) / d, where + " m=" + point_str(m)};
  };
}

Case riesz_holder_case(Rng& r) {
  const double alpha = choose(r, std::vector<double>{0.1, 0.25, 0.4});
  const int axis = pick(r, 2);
  const RealSequence f = random_sequence(r, 2, 4);
  return [=] {
    static const std::vector<RieszKernel> K{riesz_kernel(0, 2, 8), riesz_kernel(1, 2, 8)};
    return Sample{riesz_holder_ratio(f, alpha, K[axis]), fmt("N=2 i=%d alpha=%.3g", axis + 1, alpha)};
  };
}

// ||R_i f|| <= ||f|| for sum f = 0, by Parseval over one torus period (exact for such f)
Case riesz_l2_case(Rng& r) {
  const int N = pick(r, 2, 3);
  const int axis = pick(r, N);
  RealSequence f = random_sequence(r, N, N == 2 ? 4 : 2);
  f.values() -= f.sum() / static_cast<double>(f.size());
  return [=] {
    const TorusGrid g(N, spectral_grid_size(f.radius()));
    const Eigen::ArrayXd F2 = dft(f, g).abs2();
    const Eigen::ArrayXd S2 = riesz_symbol(g, axis).values.abs2();
    const double ratio = std::sqrt((F2 * S2).sum() / F2.sum());
    return Sample{1.0 + 1e-10 - ratio, fmt("N=%d i=%d ratio=%.17g", N, axis + 1, ratio)};
  };
}

Case hilbert_l2_case(Rng& r) {
  const int R = pick(r, 2, 16);
  const RealSequence f = random_sequence(r, 1, R);
  return [=] {
    const double ratio = lp_norm(hilbert_apply(f, R + 512), 2.0) / lp_norm(f, 2.0);
    return Sample{std::numbers::pi - ratio, fmt("radius=%d ratio=%.17g", R, ratio)};
  };
}

// Square functions -----------------------------------------------------------------------------

Case gk_domination_case(Rng& r) {
  const RealSequence f = random_sequence(r, 1, 3);
  return [=] {
    const RealSequence g = gk(f, 1, square_grid(), 6).values;
    const RealSequence p = gk_poisson(f, 1, square_grid(), 6, 4096).values;
    const double scale = lp_norm(g, INFINITY);
    double worst = INFINITY;
    for (Index i = 0; i < g.size(); ++i) worst = std::min(worst, (std::numbers::sqrt2 * g[i] - p[i]) / scale);
    return Sample{worst + 1e-6, "N=1 random f on radius 3"};
  };
}

Case laplace_gk_case(Rng& r) {
  const RealSequence f = random_sequence(r, 1, 4);
  const int family = pick(r, 2);
  const double w = log_uniform(r, 0.1, 10.0);
  return [=] {
    TimeProfile a = family == 0 ? TimeProfile([w](double t) { return cdouble(std::cos(w * t), 0.0); })
                                : TimeProfile([w](double t) { return cdouble(std::exp(-w * t), 0.0); });
    const RealSequence Tf = real_part(laplace_multiplier_apply(to_complex(f), a, 1.0, 28, 256));
    const RealSequence g1 = gk(Tf, 1, square_grid(), 4).values;
    const RealSequence g2 = gk(f, 2, square_grid(), 4).values;
    double ratio = 0.0;
    for (Index i = 0; i < g1.size(); ++i) ratio = std::max(ratio, g1[i] / g2[i]);
    return Sample{ratio, fmt("N=1 a=%s w=%.4g", family == 0 ? "cos(wt)" : "exp(-wt)", w)};
  };
}

Case equiv_gk_case(Rng& r, bool upper) {
  const int k = pick(r, 1, 2);
  const int variant = pick(r, 4);  // p = 1.5, 2, 3, weighted 2
  const double p = variant == 0 ? 1.5 : (variant == 2 ? 3.0 : 2.0);
  const RealSequence f = random_sequence(r, 1, 6);
  return [=] {
    const int Ro = 46;
    const RealSequence g = gk(f, k, square_grid(), Ro).values;
    const Weight w = Weight::power(0.5, 1, Ro);
    const Weight* wp = variant == 3 ? &w : nullptr;
    const double ng = lp_norm(g, p, wp), nf = lp_norm(f.resized(Ro), p, wp);
    return Sample{upper ? ng / nf : nf / ng, fmt("k=%d p=%.3g%s", k, p, wp ? " w=(1+|n|)^0.5" : "")};
  };
}

const std::vector<Entry>& registry() {
  using BI = BesselInequality;
  static const std::vector<Entry> reg = [] {
    std::vector<Entry> e;
    auto add_entry = [&](InequalityInfo info, std::function<Case(Rng&)> gen) {
      e.push_back({std::move(info), [gen](Rng& r, int count) { return repeat(r, count, gen); }});
    };
    const std::string bx = "x log-uniform in [1e-3, 1e4]";
    add_entry({"sum-L1", "bessel", "t log-uniform in [1e-3, 1e3]", false, 0, 1, 2000}, sum_l1_case);
    add_entry({"AM-GM-I", "bessel", "2-4 orders in (-1, 20], " + bx, false, 0, 1, 0},
              [](Rng& r) { return bessel_case(r, BI::amgm); });
    add_entry({"diff-I", "bessel", "a in (-1, 50], " + bx, false, 0, 1, 0},
              [](Rng& r) { return bessel_case(r, BI::diff1); });
    add_entry({"diff2-I", "bessel", "a in [-1/2, 50], " + bx, false, 0, 1, 0},
              [](Rng& r) { return bessel_case(r, BI::diff2); });
    add_entry({"diff-3", "bessel", "a in [-1/2, 50], " + bx, true, 0, 1.5, 0},
              [](Rng& r) { return bessel_case(r, BI::diff3); });
    add_entry({"cantabros", "bessel", "a in (-1, 50], " + bx, false, 0, 1, 0},
              [](Rng& r) { return bessel_case(r, BI::ratio_bounds); });
    add_entry({"bound-I", "bessel", "alpha in [-1/2, 2], a in (alpha, alpha + 50], " + bx, true, 0, 1.5, 0},
              [](Rng& r) { return bessel_case(r, BI::uniform_bound); });

    add_entry({"size-G-t", "heat", "N in 1..3, t log-uniform in [1e-2, 1e4], |n_k| <= 2 sqrt(t)", true, 0, 1.1, 0},
              size_g_case);
    add_entry({"Gt-decay-n", "heat", "N in 1..3, t log-uniform in [1e-2, 1e4], |n_k| <= 200", true, 0, 1.5, 0},
              decay_g_case);
    const std::string pairs = "N in 1..3, t log-uniform in [0.1, 1e3], |n| > 2|n-m|, |n_k| <= 4 sqrt(t)";
    add_entry({"diff-G", "heat", pairs, true, kSmoothK, 1.5, 5000}, [](Rng& r) { return smooth_g_case(r, Envelope::H); });
    add_entry({"diff2-G", "heat", pairs, true, kSmoothK, 1.5, 5000},
              [](Rng& r) { return smooth_g_case(r, Envelope::H2); });
    add_entry({"diff3-G", "heat", pairs, true, kSmoothK, 1.5, 5000},
              [](Rng& r) { return smooth_g_case(r, Envelope::H3); });
    add_entry({"maximal-heat", "heat", "N in {1,2}, random f on radius 4, 8 times per decade in [1e-2, 1e3]", true, 0,
               1.5, 50},
              maximal_heat_case);

    const std::string fk = "N=1 radius 400 sigma in {0.1,0.25,0.4}; N=2 radius 48 sigma in {0.25,0.5,0.75}";
    add_entry({"bound-frac", "fractional", fk, true, 0, 1.5, 0}, [](Rng& r) { return frac_bound_case(r, false); });
    add_entry({"bound-kernel-frac", "fractional",
               "s in {0.1,0.25,0.5,0.75,0.9}; N=1 radius 400, N=2 radius 32, n != 0", true, 0, 1.5, 0},
              [](Rng& r) { return frac_bound_case(r, true); });
    add_entry({"diff-K", "fractional", fk + ", |n| > 2|n-m|", true, 0, 1.5, 0},
              [](Rng& r) { return frac_smooth_case(r, false); });
    add_entry({"diff2-K", "fractional", fk + ", |n| > 2|n-m|", true, 0, 1.5, 0},
              [](Rng& r) { return frac_smooth_case(r, true); });
    add_entry({"max-principle", "fractional", "N in {1,2}, s in {0.1,...,0.9}, f >= 0 on radius 3, f(n0) = 0", false,
               0, 1, 1000},
              max_principle_case);
    add_entry({"comparison-principle", "fractional", "N in {1,2}, s in {0.1,...,0.9}, f >= g on radius 3", false, 0,
               1, 1000},
              comparison_case);
    add_entry({"schauder-c", "fractional", "N=1 radius 16, N=2 radius 5, sigma in {0.1,0.25,0.4}, ||f||_inf = 1",
               true, 0, 1.5, 200},
              [](Rng& r) { return schauder_case(r, SchauderMode::c); });
    add_entry({"schauder-a", "fractional", "alpha in {0.1,0.2}, alpha + 2 sigma < 1", true, 0, 1.5, 200},
              [](Rng& r) { return schauder_case(r, SchauderMode::a); });
    add_entry({"hls", "fractional", "N=1 sigma=1/4, N=2 sigma=1/2, q=1.5, p=6", true, 0, 1.5, 200}, hls_case);

    add_entry({"size-Riesz", "riesz", "N=2 radius 40, N=3 radius 10, every axis", true, 0, 1.5, 0},
              [](Rng& r) { return riesz_size_case(r, false); });
    add_entry({"smooth-Riesz", "riesz", "N=2 radius 40, N=3 radius 10, |n| > 2|n-m|", true, 0, 1.5, 0},
              [](Rng& r) { return riesz_size_case(r, true); });
    add_entry({"riesz-holder", "riesz", "N=2, random f on radius 4, alpha in {0.1,0.25,0.4}", true, 0, 1.5, 200},
              riesz_holder_case);
    add_entry({"riesz-l2", "riesz", "N in {2,3}, mean-zero f, torus Parseval", false, 0, 1, 1000}, riesz_l2_case);
    add_entry({"hilbert-l2", "riesz", "N=1, random f on radius 2..16, output radius R+512", false, 0, 1, 200},
              hilbert_l2_case);

    add_entry({"gk-domination", "squarefn", "N=1, random f on radius 3, constant sqrt(2)", false, 0, 1, 20},
              gk_domination_case);
    add_entry({"laplace-gk", "squarefn", "N=1, a(t) = cos(wt) or exp(-wt), w in [0.1, 10]", true, 0, 1.5, 20},
              laplace_gk_case);
    add_entry({"equiv-gk-upper", "squarefn", "N=1, k in {1,2}, p in {1.5,2,3} and p=2 with w=(1+|n|)^0.5", true, 0,
               1.5, 30},
              [](Rng& r) { return equiv_gk_case(r, true); });
    add_entry({"equiv-gk-lower", "squarefn", "N=1, k in {1,2}, p in {1.5,2,3} and p=2 with w=(1+|n|)^0.5", true, 0,
               1.5, 30},
              [](Rng& r) { return equiv_gk_case(r, false); });
    return e;
  }();
  return reg;
}

const Entry& entry(const std::string& id) {
  for (const auto& e : registry())
    if (e.info.id == id) return e;
  throw DomainError("unregistered inequality id: " + id);
}

// FNV-1a, stable across standard libraries
std::uint32_t id_hash(const std::string& s) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : s) h = (h ^ c) * 16777619u;
  return h;
}

std::vector<Sample> evaluate(const Entry& e, std::uint64_t seed, int count) {
  if (count <= 0) throw DomainError("empty sample grid");
  if (e.info.max_samples > 0) count = std::min(count, e.info.max_samples);
  // stream per id so ids sharing a seed still see independent grids
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    id_hash(e.info.id)};
  Rng rng(seq);
  const std::vector<Case> cases = e.cases(rng, count);
  std::vector<Sample> out(cases.size());
  parallel_for(static_cast<Index>(cases.size()), [&](Index b, Index end) {
    for (Index i = b; i < end; ++i) out[i] = cases[i]();
  });
  return out;
}

}  // namespace

std::vector<InequalityInfo> registered_inequalities() {
  std::vector<InequalityInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

const InequalityInfo& inequality_info(const std::string& id) { return entry(id).info; }

std::vector<std::string> suite_names() { return {"bessel", "heat", "fractional", "riesz", "squarefn"}; }

std::vector<std::string> select_ids(const std::vector<std::string>& ids_or_suites) {
  std::vector<std::string> out;
  auto push = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const auto& s : ids_or_suites) {
    bool matched = false;
    for (const auto& e : registry())
      if (s == "all" || e.info.suite == s || e.info.id == s) {
        push(e.info.id);
        matched = true;
      }
    if (!matched) throw DomainError("unknown inequality id or suite: " + s);
  }
  return out;
}

std::vector<Sample> sample_inequality(const std::string& id, std::uint64_t seed, int count) {
  return evaluate(entry(id), seed, count);
}

CalibratedConstant calibrate(const std::string& id, std::uint64_t seed, int points, double safety) {
  const Entry& e = entry(id);
  if (points <= 0) throw DomainError("empty sample grid");
  CalibratedConstant c;
  c.id = id;
  c.domain = e.info.domain;
  c.K = e.info.K;
  c.seed = seed;
  c.points = e.info.max_samples > 0 ? std::min(points, e.info.max_samples) : points;
  c.grid = fmt("mt19937_64 seed %llu, %d points", static_cast<unsigned long long>(seed), c.points);
  c.tool_version = DHA_VERSION;
  if (!e.info.calibrated) {
    c.C = 1.0;
    c.safety = 1.0;
    return c;
  }
  c.safety = safety > 0.0 ? safety : e.info.safety;
  if (c.safety < 1.1) throw DomainError("calibration safety factor must be >= 1.1");
  double worst = 0.0;
  for (const auto& s : evaluate(e, seed, points)) {
    if (!std::isfinite(s.value)) throw DomainError("non-finite ratio while calibrating " + id + " at " + s.where);
    worst = std::max(worst, s.value);
  }
  if (!(worst > 0.0)) throw DomainError("calibration of " + id + " produced no positive ratio");
  c.C = c.safety * worst;
  return c;
}

bool SuiteReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const SuiteItem& i) { return i.pass; });
}

SuiteReport run_suite(const std::vector<std::string>& ids_or_suites, std::uint64_t seed, const Fixture& fixture,
                      int points) {
  SuiteReport rep;
  rep.seed = seed;
  for (const auto& id : select_ids(ids_or_suites)) {
    const Entry& e = entry(id);
    SuiteItem item;
    item.id = id;
    if (e.info.calibrated) {
      const CalibratedConstant* c = fixture.find(id);
      if (!c) throw DomainError("missing fixture entry for " + id);
      if (c->seed == seed) throw DomainError("verification seed equals the calibration seed of " + id);
      item.C = c->C;
    }
    const std::vector<Sample> samples = evaluate(e, seed, points);
    item.samples = static_cast<int>(samples.size());
    item.worst_margin = INFINITY;
    for (const auto& s : samples) {
      double m = e.info.calibrated ? 1.0 - s.value / item.C : s.value;
      if (!std::isfinite(m)) m = -1.0;
      if (m < 0.0) ++item.violations;
      if (m < item.worst_margin) {
        item.worst_margin = m;
        item.worst_location = s.where;
      }
    }
    item.pass = item.violations == 0;
    rep.items.push_back(item);
  }
  return rep;
}

std::string SuiteReport::to_json() const {
  json arr = json::array();
  for (const auto& i : items)
    arr.push_back({{"id", i.id},
                   {"pass", i.pass},
                   {"samples", i.samples},
                   {"violations", i.violations},
                   {"C", i.C},
                   {"worst_margin", i.worst_margin},
                   {"worst_location", i.worst_location}});
  return json{{"tool_version", DHA_VERSION}, {"seed", seed}, {"all_pass", all_pass()}, {"items", arr}}.dump(2) + "\n";
}

std::string SuiteReport::to_table() const {
  std::ostringstream os;
  os << fmt("%-22s %-5s %8s %6s %12s %13s  %s\n", "id", "pass", "samples", "viol", "C", "worst_margin",
            "worst_location");
  for (const auto& i : items)
    os << fmt("%-22s %-5s %8d %6d %12.6g %13.6g  %s\n", i.id.c_str(), i.pass ? "yes" : "NO", i.samples, i.violations,
              i.C, i.worst_margin, i.worst_location.c_str());
  os << fmt("seed %llu: %s\n", static_cast<unsigned long long>(seed), all_pass() ? "all pass" : "FAILURES");
  return os.str();
}

}  // namespace dha
