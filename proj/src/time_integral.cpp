#include "dha/time_integral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dha/bessel.hpp"
#include "dha/errors.hpp"
#include "dha/parallel.hpp"
#include "dha/quadrature.hpp"

namespace dha {

using Eigen::Index;

namespace {

// Taylor coefficients of e^{-2t} I_m(2t) in t, degrees 0..P, for m = 0..P.
Eigen::MatrixXd taylor_table(int P) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(P + 1, P + 1);  // (m, p)
  for (int m = 0; m <= P; ++m)
    for (int p = m; p <= P; ++p) {
      double s = 0.0;
      for (int j = 0; 2 * j <= p - m; ++j) {
        const int i = p - m - 2 * j;
        const double mag = std::exp(i * std::log(2.0) - std::lgamma(i + 1.0) - std::lgamma(j + 1.0) -
                                    std::lgamma(j + m + 1.0));
        s += (i % 2 ? -mag : mag);
      }
      c(m, p) = s;
    }
  return c;
}

struct Nodes {
  std::vector<double> t, w;  // w includes the d tau Jacobian, not t^beta
};

Nodes log_panels(double a, double b, double width, int n) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
  const double h = (b - a) / panels;
  const auto& r = gauss_legendre(n);
  Nodes out;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int i = 0; i < n; ++i) {
      out.t.push_back(std::exp(c + 0.5 * h * r.nodes[i]));
      out.w.push_back(0.5 * h * r.weights[i]);
    }
  }
  return out;
}

Eigen::MatrixXd profiles(const Nodes& nd, int kmax) {
  Eigen::MatrixXd G(nd.t.size(), kmax + 1);
  for (size_t i = 0; i < nd.t.size(); ++i) G.row(i) = heat_profile(nd.t[i], kmax).transpose();
  return G;
}

}  // namespace

TimeIntegralResult heat_time_integral(const std::vector<HeatProductIntegrand>& items, int dim, double beta,
                                      const TimeIntegralOptions& opt) {
  require(dim >= 1, "dimension must be >= 1");
  int kmax = 0;
  for (const auto& it : items) {
    require(it.index.size() == it.coef.size() * dim, "integrand index count mismatch");
    for (int m : it.index) {
      require(m >= 0, "integrand indices must be nonnegative");
      kmax = std::max(kmax, m);
    }
  }
  const double k1 = kmax + 1.0;
  const double T = 25.0 * k1 * k1 + 500.0;
  const double t0 = opt.t0;
  const int P = opt.taylor_degree;
  const Eigen::MatrixXd taylor = taylor_table(P);

  const Nodes hi = log_panels(std::log(t0), std::log(T), opt.panel_width, opt.nodes);
  const Nodes lo = log_panels(std::log(t0), std::log(T), opt.panel_width, opt.nodes / 2);
  const Eigen::MatrixXd Ghi = profiles(hi, kmax), Glo = profiles(lo, kmax);
  Eigen::ArrayXd whi(hi.t.size()), wlo(lo.t.size());
  for (size_t i = 0; i < hi.t.size(); ++i) whi[i] = hi.w[i] * std::pow(hi.t[i], beta);
  for (size_t i = 0; i < lo.t.size(); ++i) wlo[i] = lo.w[i] * std::pow(lo.t[i], beta);

  const int J = opt.tail_terms;
  std::vector<std::vector<double>> A(kmax + 1);
  for (int m = 0; m <= kmax; ++m) {
    A[m] = hankel_coefficients(m, J);
    for (int j = 1; j < J; j += 2) A[m][j] = -A[m][j];
  }
  // int_T^inf t^{beta-1} (4 pi t)^{-N/2} (2t)^{-j} dt
  std::vector<double> tail_int(J);
  for (int j = 0; j < J; ++j) {
    const double e = 0.5 * dim + j - beta;
    tail_int[j] = e > 0.0 ? std::pow(4.0 * std::numbers::pi, -0.5 * dim) * std::pow(2.0, -j) *
                                std::pow(T, -e) / e
                          : std::numeric_limits<double>::quiet_NaN();
  }

  TimeIntegralResult res;
  res.t_split = T;
  res.values = Eigen::ArrayXd::Zero(items.size());
  res.error = Eigen::ArrayXd::Zero(items.size());

  parallel_for(static_cast<Index>(items.size()), [&](Index b, Index e) {
    std::vector<double> poly(P + 1), acc(P + 1), ser(J), sacc(J);
    Eigen::ArrayXd phi_hi(Ghi.rows()), phi_lo(Glo.rows()), prod_hi(Ghi.rows()), prod_lo(Glo.rows());
    for (Index q = b; q < e; ++q) {
      const auto& it = items[q];
      const size_t nterms = it.coef.size();
      std::fill(acc.begin(), acc.end(), 0.0);
      std::fill(sacc.begin(), sacc.end(), 0.0);
      acc[0] = it.constant;
      phi_hi.setConstant(it.constant);
      phi_lo.setConstant(it.constant);
      for (size_t term = 0; term < nterms; ++term) {
        const int* m = &it.index[term * dim];
        // head polynomial
        std::fill(poly.begin(), poly.end(), 0.0);
        poly[0] = 1.0;
        for (int k = 0; k < dim; ++k) {
          std::vector<double> next(P + 1, 0.0);
          if (m[k] <= P)
            for (int p = 0; p <= P; ++p) {
              if (poly[p] == 0.0) continue;
              for (int r = m[k]; p + r <= P; ++r) next[p + r] += poly[p] * taylor(m[k], r);
            }
          poly.swap(next);
        }
        for (int p = 0; p <= P; ++p) acc[p] += it.coef[term] * poly[p];
        // middle
        prod_hi = Ghi.col(m[0]).array();
        prod_lo = Glo.col(m[0]).array();
        for (int k = 1; k < dim; ++k) {
          prod_hi *= Ghi.col(m[k]).array();
          prod_lo *= Glo.col(m[k]).array();
        }
        phi_hi += it.coef[term] * prod_hi;
        phi_lo += it.coef[term] * prod_lo;
        // tail series in (2t)^{-1}
        std::fill(ser.begin(), ser.end(), 0.0);
        ser[0] = 1.0;
        for (int k = 0; k < dim; ++k) {
          std::vector<double> next(J, 0.0);
          for (int i = 0; i < J; ++i)
            for (int j = 0; i + j < J; ++j) next[i + j] += ser[i] * A[m[k]][j];
          ser.swap(next);
        }
        for (int j = 0; j < J; ++j) sacc[j] += it.coef[term] * ser[j];
      }
      double head = 0.0;
      for (int p = 0; p <= P; ++p) {
        if (acc[p] == 0.0) continue;
        if (p + beta <= 0.0) throw DomainError("time integral diverges at t = 0");
        head += acc[p] * std::pow(t0, p + beta) / (p + beta);
      }
      double tail = 0.0;
      for (int j = 0; j < J; ++j) {
        if (sacc[j] == 0.0) continue;
        if (std::isnan(tail_int[j])) throw DomainError("time integral diverges at t = infinity");
        tail += sacc[j] * tail_int[j];
      }
      if (it.constant != 0.0) {
        if (beta >= 0.0) throw DomainError("time integral diverges at t = infinity");
        tail += -it.constant * std::pow(T, beta) / beta;
      }
      const double mid_hi = (phi_hi * whi).sum();
      const double mid_lo = (phi_lo * wlo).sum();
      res.values[q] = head + mid_hi + tail;
      res.error[q] = std::abs(mid_hi - mid_lo);
    }
  });
  return res;
}

}  // namespace dha
