#include "dha/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dha/errors.hpp"
#include "dha/quadrature.hpp"

namespace dha {

namespace {

constexpr double kSeriesLimit = 30.0;

bool is_integer(double a) { return a == std::floor(a) && std::abs(a) < 1e9; }

double series_scaled(double a, double x) {
  // e^{-x} (x/2)^a / Gamma(a+1) * sum_k (x/2)^{2k} Gamma(a+1) / (k! Gamma(a+k+1))
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 1000; ++k) {
    const double ratio = q / ((k + 1.0) * (k + a + 1.0));
    term *= ratio;
    sum += term;
    if (ratio < 0.5 && term * ratio / (1.0 - ratio) <= 1e-17 * sum) break;
  }
  return std::exp(a * std::log(0.5 * x) - std::lgamma(a + 1.0) - x) * sum;
}

double integral_scaled(double a, double x) {
  // e^{-x} I_a(x) = 1/(sqrt(2 pi x) Gamma(a+1/2)) int_0^{2x} e^{-u} u^{a-1/2} (1-u/(2x))^{a-1/2} du
  const double c = a + 0.5;
  const double e = a - 0.5;
  const double am = std::max(a, 0.0);
  const double U = std::min(2.0 * x, am + 60.0 + 15.0 * std::sqrt(am + 1.0));
  auto logh = [&](double u) { return e * std::log(u) - u + e * std::log1p(-u / (2.0 * x)); };
  // reference level near the peak keeps the integrand O(1)
  double L = logh(std::min(1.0, 0.5 * U));
  for (int i = 1; i <= 64; ++i) L = std::max(L, logh(U * i / 64.0 * (1.0 - 1e-12)));
  double total = 0.0;
  const double split = std::min(1.0, U);
  // u = v^{1/c} removes the u^{c-1} endpoint behaviour on [0, split]
  auto head = [&](double v) {
    if (v <= 0.0) return 0.0;
    const double u = std::pow(v, 1.0 / c);
    return std::exp(-u + e * std::log1p(-u / (2.0 * x)) - L) / c;
  };
  total += integrate_adaptive(head, 0.0, std::pow(split, c), 1e-300, 1e-15).value;
  if (U > split) {
    auto body = [&](double u) { return std::exp(logh(u) - L); };
    total += integrate_adaptive(body, split, U, 1e-300, 1e-15).value;
  }
  return total * std::exp(L - std::lgamma(c)) / std::sqrt(2.0 * std::numbers::pi * x);
}

double asymptotic_threshold(int kmax) {
  const double k1 = kmax + 1.0;
  return std::max(2000.0, 50.0 * k1 * k1);
}

double hankel_scaled(double k, double x) {
  const auto coef = hankel_coefficients(k, 24);
  double s = 0.0, p = 1.0;
  for (size_t j = 0; j < coef.size(); ++j) {
    const double term = (j % 2 ? -1.0 : 1.0) * coef[j] * p;
    s += term;
    if (j > 0 && std::abs(term) < 1e-18 * std::abs(s)) break;
    p /= x;
  }
  return s / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

const char* to_string(BesselMethod m) {
  switch (m) {
    case BesselMethod::series: return "series";
    case BesselMethod::recurrence: return "recurrence";
    case BesselMethod::integral: return "integral";
    case BesselMethod::asymptotic: return "asymptotic";
  }
  return "?";
}

std::vector<double> hankel_coefficients(double order, int terms) {
  std::vector<double> a(terms);
  const double mu = 4.0 * order * order;
  double c = 1.0;
  a[0] = 1.0;
  for (int j = 1; j < terms; ++j) {
    const double odd = 2.0 * j - 1.0;
    c *= (mu - odd * odd) / (8.0 * j);
    a[j] = c;
  }
  return a;
}

Eigen::ArrayXd scaled_bessel_sequence(int kmax, double x) {
  require(kmax >= 0, "kmax must be >= 0");
  require(x >= 0.0 && std::isfinite(x), "Bessel argument must be finite and >= 0");
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(kmax + 1);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x >= asymptotic_threshold(kmax)) {
    for (int k = 0; k <= kmax; ++k) out[k] = hankel_scaled(k, x);
    return out;
  }
  // backward ratios r_k = I_k / I_{k-1}; past K both the dominant solution and the normalization tail are negligible
  const int K = static_cast<int>(std::ceil(std::sqrt(double(kmax) * kmax + 100.0 * x))) + 40;
  std::vector<double> r(K + 2, 0.0);
  for (int k = K; k >= 1; --k) r[k] = 1.0 / (2.0 * k / x + r[k + 1]);
  // sum_{k in Z} e^{-x} I_k(x) = 1 fixes the scale
  double acc = 0.0;
  for (int k = K; k >= 1; --k) acc = r[k] * (1.0 + acc);
  out[0] = 1.0 / (1.0 + 2.0 * acc);
  for (int k = 1; k <= kmax; ++k) out[k] = out[k - 1] * r[k];
  return out;
}

ScaledBessel scaled_bessel(double a, double x) {
  require(a > -1.0, "Bessel order must be > -1");
  require(x >= 0.0 && !std::isnan(x), "Bessel argument must be >= 0");
  ScaledBessel r{a, x, 0.0, BesselMethod::series};
  if (x == 0.0) {
    require(a >= 0.0, "I_a(0) is infinite for -1 < a < 0");
    r.value = a == 0.0 ? 1.0 : 0.0;
    return r;
  }
  if (is_integer(a) && a >= 0.0) {
    const int k = static_cast<int>(a);
    r.method = x >= asymptotic_threshold(k) ? BesselMethod::asymptotic : BesselMethod::recurrence;
    r.value = scaled_bessel_sequence(k, x)[k];
    return r;
  }
  if (x <= kSeriesLimit) {
    r.value = series_scaled(a, x);
    return r;
  }
  if (a > -0.5) {
    r.method = BesselMethod::integral;
    r.value = integral_scaled(a, x);
    return r;
  }
  // I_a = I_{a+2} + (2(a+1)/x) I_{a+1}
  r.method = BesselMethod::recurrence;
  r.value = integral_scaled(a + 2.0, x) + 2.0 * (a + 1.0) / x * integral_scaled(a + 1.0, x);
  return r;
}

double scaled_bessel_i(double a, double x) { return scaled_bessel(a, x).value; }

double scaled_bessel_int(int k, double x) { return scaled_bessel_i(std::abs(k), x); }

RatioResult bessel_ratio(double a, double x, double tol) {
  require(a > -1.0, "Bessel order must be > -1");
  require(x > 0.0, "bessel_ratio requires x > 0");
  // convergents P_n/Q_n of 1/(q_1 + 1/(q_2 + ...)), rescaled to avoid overflow
  double Pm = 1.0, P = 0.0, Qm = 0.0, Q = 1.0, logscale = 0.0;
  RatioResult res;
  auto qk = [&](int k) { return 2.0 * (a + k) / x; };
  double value = 0.0;
  for (int n = 1; n < 10000000; ++n) {
    const double q = qk(n);
    const double Pn = q * P + Pm, Qn = q * Q + Qm;
    Pm = P, P = Pn, Qm = Q, Q = Qn;
    if (Q > 1e150) {
      Pm /= Q, P /= Q, Qm /= Q;
      logscale += std::log(Q);
      Q = 1.0;
    }
    value = P / Q;
    const double Qnext = qk(n + 1) * Q + Qm;
    const double logbound = -(2.0 * logscale + std::log(Q) + std::log(Qnext));
    res.terms = n;
    if (logbound < std::log(tol)) {
      res.error_bound = std::exp(logbound);
      break;
    }
  }
  res.value = value;
  return res;
}

double normalized_bessel(double a, double x) {
  require(a > -1.0, "Bessel order must be > -1");
  require(x >= 0.0, "Bessel argument must be >= 0");
  if (x == 0.0) return 1.0;
  if (x <= kSeriesLimit) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 1000; ++k) {
      const double ratio = q / ((k + 1.0) * (k + a + 1.0));
      term *= ratio;
      sum += term;
      if (ratio < 0.5 && term * ratio / (1.0 - ratio) <= 1e-17 * sum) break;
    }
    return sum;
  }
  return std::exp(x + std::log(scaled_bessel_i(a, x)) + a * std::log(2.0 / x) + std::lgamma(a + 1.0));
}

RatioBoundPair ratio_bounds(double alpha, double x) {
  const double s = std::hypot(alpha, x);
  RatioBoundPair r;
  r.f = x / (alpha + s);
  r.g = 2.0 * alpha / (alpha + x + s);
  return r;
}

const char* to_string(BesselInequality k) {
  switch (k) {
    case BesselInequality::amgm: return "amgm-I";
    case BesselInequality::diff1: return "diff-I";
    case BesselInequality::diff2: return "diff2-I";
    case BesselInequality::diff3: return "diff-3";
    case BesselInequality::ratio_bounds: return "ratio-I";
    case BesselInequality::uniform_bound: return "bound-I";
  }
  return "?";
}

InequalityTerms inequality_terms(BesselInequality kind, const BesselPoint& p) {
  const double a = p.a, x = p.x;
  require(x > 0.0, "inequality terms need x > 0");
  InequalityTerms t;
  switch (kind) {
    case BesselInequality::diff1: {
      require(a > -1.0, "diff-I requires a > -1");
      const double r = bessel_ratio(a, x).value;
      t.lhs = 1.0 - r;
      t.structure = (a + 1.0) / x;
      break;
    }
    case BesselInequality::diff2: {
      require(a >= -0.5, "diff2-I requires a >= -1/2");
      const double r0 = bessel_ratio(a, x).value, r1 = bessel_ratio(a + 1.0, x).value;
      t.lhs = std::abs(1.0 - 2.0 * r0 + r0 * r1);
      t.structure = 1.5 / x + (a + 1.0) * (a + 2.0) / (x * x);
      break;
    }
    case BesselInequality::diff3: {
      require(a >= -0.5, "diff-3 requires a >= -1/2");
      const double r0 = bessel_ratio(a, x).value, r1 = bessel_ratio(a + 1.0, x).value,
                   r2 = bessel_ratio(a + 2.0, x).value;
      t.lhs = std::abs(1.0 - 3.0 * r0 + 3.0 * r0 * r1 - r0 * r1 * r2);
      t.structure = (a + 2.0) / (x * x) + (a + 1.0) * (a + 2.0) * (a + 3.0) / (x * x * x);
      break;
    }
    case BesselInequality::uniform_bound: {
      require(a > -0.5 && p.alpha >= -0.5 && p.alpha < a, "bound-I requires -1/2 <= alpha < a");
      t.lhs = std::exp(-p.alpha * std::log(x) + std::log(scaled_bessel_i(a, x)) +
                       (2.0 * p.alpha + 1.0) * std::log(a + 1.0));
      t.structure = 1.0;
      break;
    }
    default:
      throw DomainError("inequality has no lhs/structure form");
  }
  return t;
}

double inequality_margin(BesselInequality kind, const BesselPoint& p, double C) {
  switch (kind) {
    case BesselInequality::amgm: {
      const auto& o = p.orders;
      require(!o.empty(), "amgm needs at least one order");
      bool equal = true;
      for (double v : o) equal = equal && v == o[0];
      if (equal) return 0.0;
      const double n = static_cast<double>(o.size());
      double mean = 0.0, sum_log = 0.0, sum_lg = 0.0;
      for (double v : o) {
        require(v > -1.0, "amgm orders must be > -1");
        mean += v / n;
        sum_log += std::log(scaled_bessel_i(v, p.x));
        sum_lg += std::lgamma(v + 1.0);
      }
      const double lm = n * std::log(scaled_bessel_i(mean, p.x));
      const double upper = lm - sum_log;
      const double lower = sum_log - (lm + n * std::lgamma(mean + 1.0) - sum_lg);
      return std::min(upper, lower);
    }
    case BesselInequality::ratio_bounds: {
      require(p.a > -1.0 && p.x > 0.0, "ratio bounds require a > -1, x > 0");
      const double r = bessel_ratio(p.a, p.x).value;
      double m = r - ratio_bounds(p.a + 1.0, p.x).f;
      if (p.a >= -0.5) m = std::min(m, ratio_bounds(p.a + 0.5, p.x).f - r);
      return m;
    }
    case BesselInequality::diff1: {
      const auto t = inequality_terms(kind, p);
      return std::min(t.lhs, C * t.structure - t.lhs);
    }
    default: {
      const auto t = inequality_terms(kind, p);
      return C * t.structure - t.lhs;
    }
  }
}

double inequality_margin(BesselInequality kind, const std::vector<BesselPoint>& grid, double C) {
  require(!grid.empty(), "empty sample grid");
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : grid) m = std::min(m, inequality_margin(kind, p, C));
  return m;
}

}  // namespace dha
