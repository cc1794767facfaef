#pragma once

#include <Eigen/Core>

#include <vector>

namespace dha {

enum class BesselMethod { series, recurrence, integral, asymptotic };

const char* to_string(BesselMethod m);

// Evaluation record for e^{-x} I_a(x).
struct ScaledBessel {
  double order = 0.0;
  double x = 0.0;
  double value = 0.0;
  BesselMethod method = BesselMethod::series;
};

// e^{-x} I_a(x) for a > -1, x >= 0.
ScaledBessel scaled_bessel(double a, double x);
double scaled_bessel_i(double a, double x);

// Integer order of either sign, using I_{-k} = I_k.
double scaled_bessel_int(int k, double x);

// e^{-x} I_k(x) for k = 0..kmax in one pass.
Eigen::ArrayXd scaled_bessel_sequence(int kmax, double x);

// One-dimensional heat profile g(k) = e^{-2t} I_k(2t), k = 0..kmax.
inline Eigen::ArrayXd heat_profile(double t, int kmax) { return scaled_bessel_sequence(kmax, 2.0 * t); }

// Coefficients a_j(k) of e^{-x} I_k(x) ~ (2 pi x)^{-1/2} sum_j (-1)^j a_j(k) x^{-j}.
std::vector<double> hankel_coefficients(double order, int terms);

struct RatioResult {
  double value = 0.0;
  double error_bound = 0.0;
  int terms = 0;
};

// I_{a+1}(x) / I_a(x) from the continued fraction with quotients 2(a+k)/x; stops when the
// convergent bound 1/(Q_n Q_{n+1}) drops below tol.
RatioResult bessel_ratio(double a, double x, double tol = 1e-16);

// 2^a Gamma(a+1) x^{-a} I_a(x), equal to 1 at x = 0.
double normalized_bessel(double a, double x);

// f_alpha(x) = x / (alpha + sqrt(alpha^2 + x^2)) and g_alpha = 1 - f_alpha.
struct RatioBoundPair {
  double f = 0.0;
  double g = 0.0;
};
RatioBoundPair ratio_bounds(double alpha, double x);

enum class BesselInequality { amgm, diff1, diff2, diff3, ratio_bounds, uniform_bound };

const char* to_string(BesselInequality k);

struct BesselPoint {
  std::vector<double> orders;  // amgm only
  double a = 0.0;
  double alpha = 0.0;          // uniform_bound only
  double x = 1.0;
};

// Left side and bounding structure of an inequality, both divided by I_a(x); the inequality
// reads lhs <= C * structure. For amgm and ratio_bounds the pair is unused (see margin).
struct InequalityTerms {
  double lhs = 0.0;
  double structure = 1.0;
};
InequalityTerms inequality_terms(BesselInequality kind, const BesselPoint& p);

// Signed margin rhs - lhs at one point, scale free; >= 0 certifies the inequality there.
double inequality_margin(BesselInequality kind, const BesselPoint& p, double C = 1.0);

// Minimum margin over a sample grid.
double inequality_margin(BesselInequality kind, const std::vector<BesselPoint>& grid, double C = 1.0);

}  // namespace dha
