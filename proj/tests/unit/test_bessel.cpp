#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dha/bessel.hpp"
#include "dha/errors.hpp"
#include "support.hpp"

using namespace dha;
using dha::test::series_scaled_bessel;
using dha::test::uniform;

namespace {

// Half-integer orders in closed form, scaled by e^{-x}.
double scaled_half(int which, double x) {
  const double c = std::sqrt(2.0 / (std::numbers::pi * x));
  const double sh = 0.5 * -std::expm1(-2.0 * x), ch = 0.5 * (1.0 + std::exp(-2.0 * x));
  switch (which) {
    case -1: return c * ch;                // I_{-1/2}
    case 1: return c * sh;                 // I_{1/2}
    default: return c * (ch - sh / x);     // I_{3/2}
  }
}

}  // namespace

TEST_CASE("special values") {
  CHECK(scaled_bessel_i(0.0, 0.0) == 1.0);
  CHECK(scaled_bessel_i(1.0, 0.0) == 0.0);
  CHECK(scaled_bessel_i(2.5, 0.0) == 0.0);
  CHECK(scaled_bessel_i(0.0, 2.0) == doctest::Approx(0.308508322553671).epsilon(1e-13));
  CHECK(scaled_bessel_i(0.0, 2.0) == doctest::Approx(series_scaled_bessel(0.0, 2.0)).epsilon(1e-14));
  for (int k = 0; k <= 12; ++k)
    for (double x : {0.3, 4.0, 55.0}) CHECK(scaled_bessel_int(-k, x) == scaled_bessel_int(k, x));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(scaled_bessel_i(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(scaled_bessel_i(-1.5, 1.0), DomainError);
  CHECK_THROWS_AS(scaled_bessel_i(0.5, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_ratio(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(inequality_terms(BesselInequality::diff2, BesselPoint{{}, -0.7, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(inequality_terms(BesselInequality::uniform_bound, BesselPoint{{}, 1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("agreement with the power series") {
  std::mt19937_64 r(11);
  for (int i = 0; i < 2000; ++i) {
    const double a = (i % 2) ? std::floor(uniform(r, 0.0, 21.0)) : uniform(r, -0.99, 12.0);
    const double x = uniform(r, 1e-3, 50.0);
    const double ref = series_scaled_bessel(a, x);
    CHECK(scaled_bessel_i(a, x) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("half-integer closed forms, including the large-argument range") {
  for (double x : {1e-3, 0.5, 2.0, 29.0, 31.0, 120.0, 1e3, 1e4}) {
    CHECK(scaled_bessel_i(0.5, x) == doctest::Approx(scaled_half(1, x)).epsilon(1e-12));
    CHECK(scaled_bessel_i(-0.5, x) == doctest::Approx(scaled_half(-1, x)).epsilon(1e-12));
    if (x > 0.1) CHECK(scaled_bessel_i(1.5, x) == doctest::Approx(scaled_half(3, x)).epsilon(1e-12));
  }
  CHECK(normalized_bessel(0.5, 2.0) == doctest::Approx(std::sinh(2.0) / 2.0).epsilon(1e-13));
  for (double a : {-0.5, 0.0, 3.7}) CHECK(normalized_bessel(a, 0.0) == 1.0);
}

TEST_CASE("method selection") {
  CHECK(scaled_bessel(0.3, 5.0).method == BesselMethod::series);
  CHECK(scaled_bessel(0.3, 80.0).method == BesselMethod::integral);
  CHECK(scaled_bessel(3.0, 5.0).method == BesselMethod::recurrence);
  CHECK(scaled_bessel(3.0, 5e4).method == BesselMethod::asymptotic);
  CHECK(scaled_bessel(3.0, 5e4).value == doctest::Approx(series_scaled_bessel(3.0, 5e4, 100000)).epsilon(1e-12));
}

TEST_CASE("batch evaluation equals scalar evaluation") {
  for (double x : {0.01, 1.0, 17.0, 300.0}) {
    const Eigen::ArrayXd s = scaled_bessel_sequence(30, x);
    for (int k = 0; k <= 30; ++k) CHECK(s[k] == scaled_bessel_int(k, x));
  }
}

TEST_CASE("continued-fraction ratio") {
  const RatioResult r = bessel_ratio(0.0, 2.0, 1e-15);
  CHECK(r.value == doctest::Approx(0.697774657964008).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(series_scaled_bessel(1.0, 2.0) / series_scaled_bessel(0.0, 2.0)).epsilon(1e-13));
  CHECK(r.error_bound <= 1e-15);
  std::mt19937_64 g(12);
  for (int i = 0; i < 1000; ++i) {
    const double a = uniform(g, -0.5, 40.0), x = std::exp(uniform(g, std::log(1e-3), std::log(1e4)));
    const double q = bessel_ratio(a, x).value;
    CHECK(q < 1.0);
    CHECK(ratio_bounds(a + 1.0, x).f < q);
    CHECK(q < ratio_bounds(a + 0.5, x).f);
  }
  const RatioBoundPair p = ratio_bounds(1.0, 1.0);
  CHECK(p.f == doctest::Approx(1.0 / (1.0 + std::sqrt(2.0))));
  CHECK(p.f + p.g == doctest::Approx(1.0));
}

TEST_CASE("inequality margins at documented points") {
  BesselPoint am;
  am.orders = {0.0, 1.0};
  am.x = 2.0;
  const double i0 = series_scaled_bessel(0.0, 2.0) * std::exp(2.0), i1 = series_scaled_bessel(1.0, 2.0) * std::exp(2.0);
  const double ih = series_scaled_bessel(0.5, 2.0) * std::exp(2.0);
  CHECK(i0 * i1 == doctest::Approx(3.6262).epsilon(1e-4));
  CHECK(ih * ih == doctest::Approx(4.1871).epsilon(1e-4));
  CHECK(inequality_margin(BesselInequality::amgm, am) > 0.0);
  am.orders = {1.3, 1.3, 1.3};
  CHECK(inequality_margin(BesselInequality::amgm, am) == 0.0);

  BesselPoint d;
  d.a = 0.0;
  d.x = 1.0;
  const InequalityTerms t = inequality_terms(BesselInequality::diff1, d);
  const double ref = 1.0 - series_scaled_bessel(1.0, 1.0) / series_scaled_bessel(0.0, 1.0);
  CHECK(t.lhs == doctest::Approx(ref).epsilon(1e-13));
  CHECK(t.structure == 1.0);
  CHECK(inequality_margin(BesselInequality::diff1, d) > 0.0);

  // diff2-I carries the explicit constant 1
  std::mt19937_64 g(13);
  std::vector<BesselPoint> grid;
  for (int i = 0; i < 500; ++i) {
    BesselPoint p;
    p.a = uniform(g, -0.5, 30.0);
    p.x = std::exp(uniform(g, std::log(1e-3), std::log(1e4)));
    grid.push_back(p);
  }
  CHECK(inequality_margin(BesselInequality::diff2, grid) > 0.0);
}

TEST_CASE("order monotonicity: all gaps from 0 on, unit gaps from -1/2 on, failure just above -1") {
  std::mt19937_64 g(14);
  for (int i = 0; i < 10000; ++i) {
    const double a = uniform(g, 0.0, 30.0), b = a + uniform(g, 1e-3, 5.0);
    const double x = std::exp(uniform(g, std::log(1e-3), std::log(1e3)));
    const double ia = scaled_bessel_i(a, x), ib = scaled_bessel_i(b, x);
    if (ib > 1e-300) CHECK(ia > ib);
  }
  // Below 0 only |a| matters at large x (I_{-0.4} < I_{0.3} there), but a + 1 >= |a| keeps unit gaps ordered.
  CHECK(scaled_bessel_i(-0.4, 500.0) < scaled_bessel_i(0.3, 500.0));
  for (int i = 0; i < 2000; ++i) {
    const double a = uniform(g, -0.5, 0.0), x = std::exp(uniform(g, std::log(1e-3), std::log(1e3)));
    CHECK(scaled_bessel_i(a, x) >= scaled_bessel_i(a + 1.0, x) * (1.0 - 1e-14));
  }
  // I_{-0.9}(0.5) is about 0.60 and I_{0.1}(0.5) about 0.97 (series oracle), so the difference
  // I_a - I_{a+1} is negative here.
  const double lo = series_scaled_bessel(-0.9, 0.5), hi = series_scaled_bessel(0.1, 0.5);
  CHECK(lo < hi);
  CHECK(scaled_bessel_i(-0.9, 0.5) == doctest::Approx(lo).epsilon(1e-12));
  BesselPoint p;
  p.a = -0.9;
  p.x = 0.5;
  CHECK(inequality_margin(BesselInequality::diff1, p) < 0.0);
}

TEST_CASE("generating function and Neumann identity") {
  for (double t : {0.5, 3.0, 20.0})
    for (double u : {0.5, 0.8, 1.0, 1.7, 2.0}) {
      const int K = static_cast<int>(t + 20.0 * std::sqrt(t) + 40.0);
      const Eigen::ArrayXd s = scaled_bessel_sequence(K, t);
      double acc = s[0];
      for (int k = 1; k <= K; ++k) acc += (std::pow(u, k) + std::pow(u, -k)) * s[k];
      CHECK(acc == doctest::Approx(std::exp(0.5 * t * (u + 1.0 / u) - t)).epsilon(1e-12));
    }
  for (auto [t1, t2] : {std::pair{0.5, 1.5}, std::pair{3.0, 4.0}, std::pair{10.0, 25.0}}) {
    const int K = static_cast<int>(t1 + t2 + 20.0 * std::sqrt(t1 + t2) + 40.0);
    for (int n : {0, 1, 5, 12}) {
      double acc = 0.0;
      for (int k = -K; k <= K; ++k) acc += scaled_bessel_int(k, t1) * scaled_bessel_int(n - k, t2);
      CHECK(acc == doctest::Approx(scaled_bessel_int(n, t1 + t2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("cosine integral representation") {
  // (1/pi) int_0^pi e^{t(cos th - 1)} cos(n th) d th by the trapezoid rule, exact to rounding
  // for this periodic integrand
  const int M = 4096;
  for (double t : {0.1, 1.0, 10.0, 50.0, 100.0})
    for (int n = 0; n <= 50; n += 7) {
      double acc = 0.0;
      for (int j = 0; j <= M; ++j) {
        const double th = std::numbers::pi * j / M;
        const double w = (j == 0 || j == M) ? 0.5 : 1.0;
        acc += w * std::exp(t * (std::cos(th) - 1.0)) * std::cos(n * th);
      }
      acc /= M;
      CHECK(std::abs(acc - scaled_bessel_int(n, t)) <= 1e-10);
      CHECK(std::abs(series_scaled_bessel(n, t) - scaled_bessel_int(n, t)) <=
            1e-12 * series_scaled_bessel(n, t) + 1e-300);
    }
}

TEST_CASE("large-order behaviour") {
  const double nu = 200.0, t = 1.0;
  // I_200(1) is near 1e-435, below double range, so compare logarithms via 2^nu Gamma(nu+1) t^{-nu} I_nu(t)
  const double log_i = std::log(normalized_bessel(nu, t)) - nu * std::log(2.0) - std::lgamma(nu + 1.0) + nu * std::log(t);
  const double log_ratio =
      log_i - (-0.5 * std::log(2.0 * std::numbers::pi * nu) + nu * std::log(std::exp(1.0) * t / (2.0 * nu)));
  CHECK(std::exp(log_ratio) > 0.9);
  CHECK(std::exp(log_ratio) < 1.1);
  const auto a = hankel_coefficients(3.0, 3);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == doctest::Approx((4.0 * 9.0 - 1.0) / 8.0));
  CHECK(a[2] == doctest::Approx((4.0 * 9.0 - 1.0) * (4.0 * 9.0 - 9.0) / 128.0));
}

TEST_CASE("integer orders lie in [0, 1] and sum to one") {
  for (double x : {1e-4, 0.7, 9.0, 250.0}) {
    const int K = static_cast<int>(x + 40.0 * std::sqrt(x + 1.0) + 40.0);
    const Eigen::ArrayXd s = scaled_bessel_sequence(K, x);
    CHECK((s >= 0.0).all());
    CHECK((s <= 1.0).all());
  }
}
