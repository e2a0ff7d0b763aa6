#include "hrmc/special.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <stdexcept>

namespace hrmc {

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
  double result = 0.0;
  // Shift the argument up until the asymptotic expansion is accurate.
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n})
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = inv2 * (1.0 / 12.0 -
                  inv2 * (1.0 / 120.0 -
                  inv2 * (1.0 / 252.0 -
                  inv2 * (1.0 / 240.0 -
                  inv2 * (1.0 / 132.0 -
                  inv2 * (691.0 / 32760.0))))));
  return result + std::log(x) - 0.5 * inv - series;
}

double chi_squared_quantile(double dof, double prob) {
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::quantile(dist, prob);
}

}  // namespace hrmc
