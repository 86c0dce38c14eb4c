#pragma once

#include <cmath>

#include "percoplanar/errors.hpp"

namespace percoplanar {

// Survival probability of the supercritical giant: the unique (0,1) root of
// x = 1 - exp(-c x), found by bracketed bisection. Returns 0 for c <= 1.
inline double giant_fixed_point(double c, double tol = 1e-12) {
  if (c <= 0.0) throw validation_error("giant_fixed_point: c must be positive");
  if (tol <= 0.0) throw validation_error("giant_fixed_point: tol must be positive");
  if (c <= 1.0) return 0.0;
  auto f = [c](double x) { return -std::expm1(-c * x) - x; };
  double lo = tol, hi = 1.0 - tol;
  if (f(lo) <= 0.0) return 0.0;  // root below tol (c barely supercritical)
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct GiantPrediction {
  double c = 0.0;
  double x = 0.0;
  double vertices = 0.0;  // x * n
  double edges = 0.0;     // c * n * (2x - x^2) / 2
};

inline GiantPrediction predicted_giant(long long n, double c) {
  if (c <= 1.0) throw validation_error("predicted_giant: c must exceed 1");
  double x = giant_fixed_point(c);
  return {c, x, x * static_cast<double>(n),
          c * static_cast<double>(n) * (2.0 * x - x * x) / 2.0};
}

// Residual of the identity -ln(1-x)/x = sum_{k>=0} x^k/(k+1), summed until
// the tail bound x^{K+1}/((K+2)(1-x)) drops below 1e-12.
inline double series_identity_check(double x) {
  if (x <= 0.0 || x >= 1.0) throw validation_error("series_identity_check: need 0 < x < 1");
  double sum = 0.0;
  double pow_x = 1.0;
  for (long long k = 0;; ++k) {
    sum += pow_x / static_cast<double>(k + 1);
    pow_x *= x;
    double tail = pow_x / (static_cast<double>(k + 3) * (1.0 - x));
    if (tail < 1e-12) break;
  }
  double direct = -std::log1p(-x) / x;
  return std::fabs(direct - sum);
}

struct CycleExpectation {
  double refined = 0.0;      // sum_{k=3}^{g0} c^k / (2k): asymptotic mean count
  double paper_upper = 0.0;  // g0 * c^{g0}: loose upper bound
};

inline CycleExpectation expected_short_cycles(double c, int g0) {
  if (g0 < 3) throw validation_error("expected_short_cycles: g0 must be at least 3");
  if (c <= 0.0) throw validation_error("expected_short_cycles: c must be positive");
  double refined = 0.0;
  double pow_c = c * c;
  for (int k = 3; k <= g0; ++k) {
    pow_c *= c;
    refined += pow_c / (2.0 * k);
  }
  return {refined, static_cast<double>(g0) * std::pow(c, g0)};
}

}  // namespace percoplanar
