#include "hrmc/models/stoch_vol.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hrmc/rng.hpp"

namespace hrmc {

namespace {

// Coordinate layout: [phi_star, log_kappa, log_sigma2, x_0..x_T].
BlockStructure sv_blocks(int t_obs) {
  std::vector<int> x_block;
  for (int t = 0; t <= t_obs; ++t) x_block.push_back(3 + t);
  return BlockStructure(4 + t_obs, {{0}, {1, 2}, x_block});
}

std::vector<std::string> sv_names(int t_obs) {
  std::vector<std::string> names{"phi_star", "log_kappa", "log_sigma2"};
  for (int t = 0; t <= t_obs; ++t) names.push_back("x" + std::to_string(t));
  return names;
}

std::vector<ParamGroup> sv_groups(int t_obs) {
  ParamGroup x{"x", {}};
  for (int t = 0; t <= t_obs; ++t) x.indices.push_back(3 + t);
  return {{"phi_star", {0}}, {"log_kappa", {1}}, {"log_sigma2", {2}}, x};
}

}  // namespace

SvData make_sv_data(int t_obs, std::uint64_t seed, double phi_star_variance) {
  if (t_obs < 1) throw std::invalid_argument("sv data: t_obs must be >= 1");
  Rng rng(seed);
  const double phi_star = std::sqrt(phi_star_variance) * rng.normal();
  const double phi = std::tanh(0.5 * phi_star);
  const double kappa = std::exp(-2.0 + rng.normal());
  std::gamma_distribution<double> gamma(4.0, 0.25);  // rate 4
  const double sigma2 = 1.0 / gamma(rng.engine());
  const double sigma = std::sqrt(sigma2);

  double x = std::sqrt(sigma2 / (1.0 - phi * phi)) * rng.normal();
  SvData data;
  data.returns.resize(t_obs);
  for (int t = 0; t < t_obs; ++t) {
    x = phi * x + sigma * rng.normal();
    data.returns[t] = kappa * std::exp(0.5 * x) * rng.normal();
  }
  return data;
}

StochVolModel::StochVolModel(SvData data, double phi_star_variance)
    : TargetModel("sv", 4 + static_cast<int>(data.returns.size()),
                  sv_blocks(static_cast<int>(data.returns.size())),
                  sv_names(static_cast<int>(data.returns.size())),
                  sv_groups(static_cast<int>(data.returns.size()))),
      data_(std::move(data)),
      prior_var_phi_star_(phi_star_variance) {
  if (data_.returns.size() < 1) throw std::invalid_argument("sv: empty returns");
}

double StochVolModel::potential_impl(const Vec& theta) const {
  const int t_max = t_obs();
  const double phi_star = theta[0];
  const double c = theta[1];  // log kappa
  const double w = theta[2];  // log sigma2
  const double phi = std::tanh(0.5 * phi_star);
  const double inv_s2 = std::exp(-w);
  const double inv_k2 = std::exp(-2.0 * c);
  const auto x = theta.tail(t_max + 1);

  double u = 0.5 * phi_star * phi_star / prior_var_phi_star_;
  u += 0.5 * (c + 2.0) * (c + 2.0);
  u += 4.0 * w + 4.0 * std::exp(-w);
  // stationary x_0 and AR(1) transitions
  const double one_m_phi2 = 1.0 - phi * phi;
  u += 0.5 * one_m_phi2 * x[0] * x[0] * inv_s2 + 0.5 * w - 0.5 * std::log(one_m_phi2);
  for (int t = 1; t <= t_max; ++t) {
    const double r = x[t] - phi * x[t - 1];
    u += 0.5 * r * r * inv_s2 + 0.5 * w;
  }
  // observations
  for (int t = 1; t <= t_max; ++t) {
    const double y = data_.returns[t - 1];
    u += 0.5 * y * y * std::exp(-x[t]) * inv_k2 + 0.5 * x[t] + c;
  }
  return u;
}

void StochVolModel::grad_impl(const Vec& theta, Vec& grad) const {
  const int t_max = t_obs();
  const double phi_star = theta[0];
  const double c = theta[1];
  const double w = theta[2];
  const double phi = std::tanh(0.5 * phi_star);
  const double inv_s2 = std::exp(-w);
  const double inv_k2 = std::exp(-2.0 * c);
  const auto x = theta.tail(t_max + 1);
  const double one_m_phi2 = 1.0 - phi * phi;

  double du_dphi = -phi * x[0] * x[0] * inv_s2 + phi / one_m_phi2;
  double du_dc = (c + 2.0);
  double du_dw = 4.0 - 4.0 * std::exp(-w) + 0.5 * (t_max + 1);
  grad.setZero();

  grad[3] = one_m_phi2 * x[0] * inv_s2;
  du_dw -= 0.5 * one_m_phi2 * x[0] * x[0] * inv_s2;
  for (int t = 1; t <= t_max; ++t) {
    const double r = x[t] - phi * x[t - 1];
    grad[3 + t] += r * inv_s2;
    grad[3 + t - 1] -= phi * r * inv_s2;
    du_dphi -= r * x[t - 1] * inv_s2;
    du_dw -= 0.5 * r * r * inv_s2;
  }
  for (int t = 1; t <= t_max; ++t) {
    const double y = data_.returns[t - 1];
    const double obs = y * y * std::exp(-x[t]) * inv_k2;
    grad[3 + t] += -0.5 * obs + 0.5;
    du_dc += 1.0 - obs;
  }
  grad[0] = phi_star / prior_var_phi_star_ + du_dphi * 0.5 * one_m_phi2;
  grad[1] = du_dc;
  grad[2] = du_dw;
}

bool StochVolModel::write_data_csv(std::ostream& os) const {
  os << "return\n";
  for (int t = 0; t < t_obs(); ++t) os << data_.returns[t] << "\n";
  return true;
}

}  // namespace hrmc
