#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "dha/lattice.hpp"

namespace dha::test {

inline double uniform(std::mt19937_64& r, double a, double b) {
  return a + (b - a) * (static_cast<double>(r() >> 11) * 0x1.0p-53);
}

inline RealSequence random_sequence(std::mt19937_64& r, int dim, int radius, double lo = -1.0, double hi = 1.0) {
  RealSequence f(dim, radius);
  for (Index i = 0; i < f.size(); ++i) f[i] = uniform(r, lo, hi);
  return f;
}

inline RealSequence mean_zero(RealSequence f) {
  f.values() -= f.sum() / static_cast<double>(f.size());
  return f;
}

inline double rel_linf(const RealSequence& a, const RealSequence& b) {
  return (a.values() - b.values()).abs().maxCoeff() / a.values().abs().maxCoeff();
}

// Series e^{-x} I_a(x) = sum_k (x/2)^{2k+a} e^{-x} / (k! Gamma(k+a+1)), summed in log space.
inline double series_scaled_bessel(double a, double x, int terms = 400) {
  if (x == 0.0) return a == 0.0 ? 1.0 : 0.0;
  double acc = 0.0;
  const double lx = std::log(0.5 * x);
  for (int k = 0; k < terms; ++k) {
    const double g = k + a + 1.0;
    if (g <= 0.0 && g == std::floor(g)) continue;  // 1/Gamma vanishes at the poles
    const double lt = (2.0 * k + a) * lx - x - std::lgamma(k + 1.0) - std::lgamma(g);
    const double sign = (g < 0.0 && static_cast<long>(std::floor(g)) % 2 != 0) ? -1.0 : 1.0;
    const double term = sign * std::exp(lt);
    acc += term;
    if (k > x && std::abs(term) < 1e-18 * std::abs(acc)) break;
  }
  return acc;
}

}  // namespace dha::test
