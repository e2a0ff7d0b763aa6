#pragma once

#include <cstdint>

#include "hrmc/model.hpp"

namespace hrmc {

/// Covariates and binary responses for the sparse logistic regression.
struct HorseshoeData {
  Mat x;             // n x p
  Eigen::VectorXi y; // n, entries in {0,1}
};

/// Synthetic data matching the benchmark protocol: covariates N(0, Sigma)
/// with unit variances and 0.8 cross-correlation, first five coefficients 1
/// and the rest 0, responses Bernoulli(logit^{-1}(x_i' beta)). Deterministic
/// given the seed.
HorseshoeData make_horseshoe_data(int n, int p, std::uint64_t seed);

/// Logistic regression with a horseshoe prior, sampled in unconstrained
/// coordinates (beta0, beta_1..p, log lambda_1..p):
///
///   y_i | eta_i ~ Bernoulli(logit^{-1}(eta_i)),  eta_i = beta0 + x_i' beta
///   beta_j | lambda_j ~ N(0, tau^2 lambda_j^2)
///   lambda_j ~ Half-Cauchy(0, 1),  beta0 ~ N(0, sigma0^2)
///
/// Block A = (beta0, log lambda), block B = beta.
class HorseshoeModel : public TargetModel {
 public:
  HorseshoeModel(HorseshoeData data, double tau = 1.0, double sigma0 = 10.0);

  int n() const { return static_cast<int>(data_.y.size()); }
  int p() const { return static_cast<int>(data_.x.cols()); }
  const HorseshoeData& data() const { return data_; }

  bool write_data_csv(std::ostream& os) const override;

 protected:
  double potential_impl(const Vec& theta) const override;
  void grad_impl(const Vec& theta, Vec& grad) const override;

 private:
  HorseshoeData data_;
  double tau2_;
  double sigma0_sq_;
};

}  // namespace hrmc
