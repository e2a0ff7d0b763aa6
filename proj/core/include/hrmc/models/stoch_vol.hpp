#pragma once

#include <cstdint>

#include "hrmc/model.hpp"

namespace hrmc {

/// Observed returns y_1..y_T for the stochastic volatility model.
struct SvData {
  Vec returns;
};

/// Simulates a returns series from the model's own generative process
/// (hyperparameters drawn from their priors). Deterministic given the seed.
SvData make_sv_data(int t_obs, std::uint64_t seed, double phi_star_variance = 2.0);

/// Stochastic volatility state-space model in unconstrained coordinates
/// (phi_star, log kappa, log sigma2, x_0..x_T):
///
///   kappa ~ logN(-2, 1),  phi_star ~ N(0, phi_star_variance),
///   phi = tanh(phi_star / 2),  sigma2 ~ InvGamma(4, 4),
///   x_0 ~ N(0, sigma2 / (1 - phi^2)),  x_t ~ N(phi x_{t-1}, sigma2),
///   y_t ~ N(0, kappa^2 e^{x_t}).
///
/// Log-Jacobians of the log kappa and log sigma2 transforms are folded into
/// the potential. Blocks: {phi_star}, {log kappa, log sigma2}, {x}.
class StochVolModel : public TargetModel {
 public:
  explicit StochVolModel(SvData data, double phi_star_variance = 2.0);

  int t_obs() const { return static_cast<int>(data_.returns.size()); }
  const SvData& data() const { return data_; }

  bool write_data_csv(std::ostream& os) const override;

 protected:
  double potential_impl(const Vec& theta) const override;
  void grad_impl(const Vec& theta, Vec& grad) const override;

 private:
  SvData data_;
  double prior_var_phi_star_;
};

}  // namespace hrmc
