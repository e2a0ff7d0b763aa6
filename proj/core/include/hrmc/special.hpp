#pragma once

#include <cmath>

namespace hrmc {

/// log(1 + e^x) without overflow for large |x|.
inline double log1p_exp(double x) {
  if (x > 35.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

/// Logistic function 1 / (1 + e^{-x}).
inline double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

/// Digamma function via the shift recurrence plus the asymptotic series;
/// accurate to ~1e-12 for arguments above 1e-6.
double digamma(double x);

/// Quantile of the chi-squared distribution with `dof` degrees of freedom.
double chi_squared_quantile(double dof, double prob);

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace hrmc
