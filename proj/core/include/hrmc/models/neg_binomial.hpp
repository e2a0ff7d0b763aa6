#pragma once

#include <cstdint>

#include "hrmc/model.hpp"

namespace hrmc {

/// Count table for the random-effects negative binomial model; rows are
/// groups, columns are repeated observations. Entries are integer-valued.
struct NegBinData {
  Mat counts;  // groups x per_group
};

/// Synthetic counts with true mu = 10, nu = 0.5 (gamma-Poisson mixture).
/// Deterministic given the seed.
NegBinData make_negbin_data(int groups, int per_group, std::uint64_t seed,
                            double mu_true = 10.0, double nu_true = 0.5);

/// Random-effects negative binomial model in unconstrained coordinates
/// (mu, log nu, eta_1..eta_G):
///
///   nu ~ InvGamma(1, 0.5),  mu ~ N(0, 10^2),  eta_i ~ N(mu, 3^2),
///   y_ij ~ NegBin(nu, nu / (nu + e^{eta_i}))   (size-probability form,
///   so E[y_ij] = e^{eta_i}).
///
/// Block A = (mu, log nu), block B = eta.
class NegBinomialModel : public TargetModel {
 public:
  explicit NegBinomialModel(NegBinData data);

  int groups() const { return static_cast<int>(data_.counts.rows()); }
  int per_group() const { return static_cast<int>(data_.counts.cols()); }
  const NegBinData& data() const { return data_; }

  bool write_data_csv(std::ostream& os) const override;

 protected:
  double potential_impl(const Vec& theta) const override;
  void grad_impl(const Vec& theta, Vec& grad) const override;

 private:
  NegBinData data_;
};

}  // namespace hrmc
