#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "dha/errors.hpp"
#include "dha/fractional.hpp"
#include "dha/heat.hpp"
#include "support.hpp"

using namespace dha;
using dha::test::mean_zero;
using dha::test::random_sequence;
using dha::test::rel_linf;

namespace {

const double kLogPi = std::log(std::numbers::pi);

// 1-D closed forms
double k_sigma_1d(double sigma, int m) {
  m = std::abs(m);
  return std::exp(std::lgamma(0.5 - sigma) - sigma * std::log(4.0) - 0.5 * kLogPi - std::lgamma(sigma) +
                  std::lgamma(m + sigma) - std::lgamma(m + 1 - sigma));
}

double k_s_1d(double s, int m) {
  m = std::abs(m);
  return std::exp(s * std::log(4.0) + std::lgamma(0.5 + s) - 0.5 * kLogPi - std::lgamma(1 - s) + std::log(s) +
                  std::lgamma(m - s) - std::lgamma(m + 1 + s));
}

double frac_total_1d(double s) {
  return std::exp(s * std::log(4.0) + std::lgamma(0.5 + s) - 0.5 * kLogPi - std::lgamma(1 + s));
}

std::vector<double> axis_values(const FracKernel& K, const std::vector<int>& ns) {
  std::vector<double> v;
  for (int n : ns) {
    Point p(K.dim, 0);
    p[0] = n;
    v.push_back(K.values.at(p));
  }
  return v;
}

}  // namespace

TEST_CASE("kernels against one-dimensional closed forms") {
  for (double sigma : {0.1, 0.25, 0.4}) {
    const FracKernel K = frac_integral_kernel(sigma, 1, 60);
    for (int m = -60; m <= 60; m += 7) CHECK(K.values.at({m}) == doctest::Approx(k_sigma_1d(sigma, m)).epsilon(1e-8));
    CHECK((K.values.values() > 0.0).all());
    CHECK(K.error.values().maxCoeff() <= 1e-8 * K.values.values().maxCoeff());
  }
  for (double s : {0.1, 0.4, 0.5, 0.9}) {
    const FracKernel K = frac_power_kernel(s, 1, 60);
    CHECK(K.values.at({0}) == 0.0);
    for (int m = 1; m <= 60; m += 5) {
      CHECK(K.values.at({m}) == doctest::Approx(k_s_1d(s, m)).epsilon(1e-8));
      CHECK(K.values.at({-m}) == K.values.at({m}));
    }
    CHECK(K.total == doctest::Approx(frac_total_1d(s)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(frac_integral_kernel(0.5, 1, 4), DomainError);
  CHECK_THROWS_AS(frac_integral_kernel(1.0, 2, 4), DomainError);
  CHECK_THROWS_AS(frac_integral_kernel(0.0, 2, 4), DomainError);
  CHECK_THROWS_AS(frac_power_kernel(1.0, 1, 4), DomainError);
  CHECK_THROWS_AS(frac_power_kernel(0.0, 1, 4), DomainError);
}

TEST_CASE("kernel decay slopes") {
  const FracKernel K = frac_integral_kernel(0.5, 2, 64);
  CHECK((K.values.values() > 0.0).all());
  const std::vector<int> ns = {16, 32, 64};
  std::vector<double> x(ns.begin(), ns.end());
  CHECK(std::abs(fit_loglog(x, axis_values(K, ns)).slope + 1.0) < 0.05);

  const FracKernel P = frac_power_kernel(0.4, 1, 256);
  const std::vector<int> ms = {32, 64, 128, 256};
  std::vector<double> y(ms.begin(), ms.end());
  CHECK(std::abs(fit_loglog(y, axis_values(P, ms)).slope + 1.8) < 0.05);
}

TEST_CASE("negative power of the heat kernel dominates t^sigma G_2t") {
  for (int N : {1, 2}) {
    const double sigma = 0.25, t = 1.5;
    const HeatKernel G = heat_kernel(t, N);
    const RealSequence lhs = apply_frac_integral(G.values, sigma, Path::kernel);
    const HeatKernel G2 = heat_kernel(2 * t, N, G.radius);
    CHECK(((lhs.values() - std::pow(t, sigma) * G2.values.values()) >= 0.0).all());
  }
}

TEST_CASE("dual paths, linearity and inverse consistency") {
  std::mt19937_64 r(51);
  for (int N : {1, 2}) {
    const int M = N == 1 ? 65536 : 512;
    const RealSequence f = mean_zero(random_sequence(r, N, 6)), g = random_sequence(r, N, 6);
    CHECK(rel_linf(apply_frac_integral(f, 0.25, Path::kernel), apply_frac_integral(f, 0.25, Path::spectral, -1, M)) < 1e-6);
    CHECK(rel_linf(apply_frac_power(g, 0.5, Path::kernel), apply_frac_power(g, 0.5, Path::spectral, -1, M)) < 1e-6);

    const RealSequence a = apply_frac_integral(f, 0.25, Path::kernel), b = apply_frac_integral(g, 0.25, Path::kernel);
    RealSequence fg(f.window(), 2.0 * f.values() - 3.0 * g.values());
    const RealSequence c = apply_frac_integral(fg, 0.25, Path::kernel);
    CHECK((c.values() - (2.0 * a.values() - 3.0 * b.values())).abs().maxCoeff() < 1e-12 * c.values().abs().maxCoeff() + 1e-14);
    CHECK_THROWS_AS(apply_frac_integral(g, 0.25, Path::spectral), DomainError);
  }
  // (-Delta)^s (-Delta)^{-s} f = f on the torus
  const RealSequence f = mean_zero(random_sequence(r, 2, 5));
  const RealSequence u = apply_frac_integral(f, 0.25, Path::spectral, 60, 256);
  const RealSequence back = apply_frac_power(u, 0.25, Path::spectral, 5, 256);
  CHECK(rel_linf(f, back) < 1e-5);
}

TEST_CASE("constant data and kernel cancellation") {
  // a constant block seen from its centre: (-Delta)^s c = c * sum_{|k| > R} K_s(k), shrinking in R
  const double s = 0.5;
  const FracKernel K = frac_power_kernel(s, 1, 2000);
  double prev = std::numeric_limits<double>::infinity();
  for (int R : {10, 40, 160}) {
    RealSequence c(1, R);
    c.values().setConstant(2.0);
    const double v = apply_frac_power(c, K, 0).at({0});
    double outside = K.total;
    for (int k = -R; k <= R; ++k) outside -= K.values.at({k});
    CHECK(v == doctest::Approx(2.0 * outside).epsilon(1e-9));
    CHECK(v < prev);
    prev = v;
  }
  // sum_k (K_sigma(n - k) - K_sigma(k)) -> 0
  const FracKernel N = frac_integral_kernel(0.25, 1, 1200);
  double last = std::numeric_limits<double>::infinity();
  for (int R : {50, 100, 200, 400, 800}) {
    double acc = 0.0;
    for (int k = -R; k <= R; ++k) acc += N.values.at({3 - k}) - N.values.at({k});
    CHECK(std::abs(acc) < last);
    last = std::abs(acc);
  }
  CHECK(last < 1e-2);
}

TEST_CASE("limits in s") {
  const FracLimitReport L = frac_limits_check(RealSequence::delta(1, 0), {0.1, 0.01, 0.001}, {0.9, 0.99, 0.999});
  CHECK(L.decreasing_zero);
  CHECK(L.decreasing_one);
  CHECK(L.dev_zero.back() <= 0.05);
  CHECK(L.dev_one.back() <= 0.05);
  const RealSequence d = apply_frac_power(RealSequence::delta(2, 0), 0.999, Path::kernel, 1);
  CHECK(d.at({0, 0}) == doctest::Approx(4.0).epsilon(0.05 / 4));
  CHECK(d.at({1, 0}) == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("maximum and comparison principles") {
  const FracKernel K = frac_power_kernel(0.5, 2, 12);
  RealSequence f = RealSequence::delta(2, 2, {1, 0});
  CHECK(maximum_principle_check(f, {0, 0}, K) < 0.0);
  CHECK(maximum_principle_check(RealSequence(2, 2), {0, 0}, K) == 0.0);
  CHECK_THROWS_AS(maximum_principle_check(RealSequence::delta(2, 2), {0, 0}, K), DomainError);
  f.ref({1, 0}) = -1.0;
  CHECK_THROWS_AS(maximum_principle_check(f, {0, 0}, K), DomainError);

  std::mt19937_64 r(52);
  for (int i = 0; i < 200; ++i) {
    RealSequence g = random_sequence(r, 2, 3), h = g;
    for (Index j = 0; j < h.size(); ++j) h[j] += dha::test::uniform(r, 0.0, 1.0);
    const Point n0 = h.window().point(static_cast<Index>(r() % static_cast<std::uint64_t>(h.size())));
    h.ref(n0) = g.at(n0);
    CHECK(comparison_principle_check(h, g, n0, K) <= 1e-12);
  }
}

TEST_CASE("Schauder and HLS helpers") {
  RealSequence c(2, 5);
  c.values().setConstant(3.0);
  CHECK(schauder_ratio(c, 0.25, SchauderMode::c) == 0.0);
  CHECK(schauder_ratio(c, 0.25, SchauderMode::a, 0.3) == 0.0);
  std::mt19937_64 r(53);
  const RealSequence f = random_sequence(r, 2, 5);
  const double rc = schauder_ratio(f, 0.25, SchauderMode::c);
  CHECK(std::isfinite(rc));
  CHECK(rc > 0.0);
  CHECK_THROWS_AS(schauder_ratio(f, 0.5, SchauderMode::c), DomainError);
  CHECK_THROWS_AS(schauder_ratio(f, 0.25, SchauderMode::a, 0.6), DomainError);

  CHECK(hls_admissible(2, 0.5, 6.0, 1.5));
  CHECK(hls_admissible(1, 0.25, 6.0, 1.5));
  CHECK_FALSE(hls_admissible(2, 0.5, 2.0, 1.5));
  CHECK_FALSE(hls_admissible(2, 0.5, 6.0, 1.0));
  CHECK_FALSE(hls_admissible(2, 0.5, 1.2, 1.5));
  const double h = hls_ratio(f, 0.5, 6.0, 1.5, 12);
  CHECK(std::isfinite(h));
  CHECK(h > 0.0);
}
