#include "hrmc/models/neg_binomial.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hrmc/rng.hpp"
#include "hrmc/special.hpp"

namespace hrmc {

namespace {

BlockStructure negbin_blocks(int groups) {
  std::vector<int> eta;
  for (int i = 0; i < groups; ++i) eta.push_back(2 + i);
  return BlockStructure(2 + groups, {{0, 1}, eta});
}

std::vector<std::string> negbin_names(int groups) {
  std::vector<std::string> names{"mu", "log_nu"};
  for (int i = 1; i <= groups; ++i) names.push_back("eta" + std::to_string(i));
  return names;
}

std::vector<ParamGroup> negbin_groups(int groups) {
  ParamGroup eta{"eta", {}};
  for (int i = 0; i < groups; ++i) eta.indices.push_back(2 + i);
  return {{"mu", {0}}, {"log_nu", {1}}, eta};
}

}  // namespace

NegBinData make_negbin_data(int groups, int per_group, std::uint64_t seed, double mu_true,
                            double nu_true) {
  if (groups < 1 || per_group < 1)
    throw std::invalid_argument("negbin data: groups, per_group must be >= 1");
  Rng rng(seed);
  NegBinData data;
  data.counts.resize(groups, per_group);
  for (int i = 0; i < groups; ++i) {
    const double eta = mu_true + 3.0 * rng.normal();
    const double mean = std::exp(eta);
    for (int j = 0; j < per_group; ++j) {
      // NegBin(nu, nu/(nu+mean)) as a gamma-Poisson mixture
      std::gamma_distribution<double> gamma(nu_true, mean / nu_true);
      std::poisson_distribution<long long> poisson(gamma(rng.engine()));
      data.counts(i, j) = static_cast<double>(poisson(rng.engine()));
    }
  }
  return data;
}

NegBinomialModel::NegBinomialModel(NegBinData data)
    : TargetModel("negbin", 2 + static_cast<int>(data.counts.rows()),
                  negbin_blocks(static_cast<int>(data.counts.rows())),
                  negbin_names(static_cast<int>(data.counts.rows())),
                  negbin_groups(static_cast<int>(data.counts.rows()))),
      data_(std::move(data)) {}

double NegBinomialModel::potential_impl(const Vec& theta) const {
  const double mu = theta[0];
  const double u = theta[1];  // log nu
  const double nu = std::exp(u);
  const auto eta = theta.tail(groups());

  // priors: mu ~ N(0, 100); nu ~ InvGamma(1, 0.5) in log coordinates
  double pot = mu * mu / 200.0 + u + 0.5 * std::exp(-u);
  const double lg_nu = std::lgamma(nu);
  for (int i = 0; i < groups(); ++i) {
    const double d = eta[i] - mu;
    pot += d * d / 18.0;
    const double m = std::exp(eta[i]);
    for (int j = 0; j < per_group(); ++j) {
      const double y = data_.counts(i, j);
      pot += -std::lgamma(y + nu) + lg_nu - nu * u + (nu + y) * std::log(nu + m) -
             y * eta[i];
    }
  }
  return pot;
}

void NegBinomialModel::grad_impl(const Vec& theta, Vec& grad) const {
  const double mu = theta[0];
  const double u = theta[1];
  const double nu = std::exp(u);
  const auto eta = theta.tail(groups());

  grad.setZero();
  grad[0] = mu / 100.0;
  double du_dnu = 0.0;
  const double psi_nu = digamma(nu);
  for (int i = 0; i < groups(); ++i) {
    const double d = eta[i] - mu;
    grad[0] -= d / 9.0;
    grad[2 + i] = d / 9.0;
    const double m = std::exp(eta[i]);
    for (int j = 0; j < per_group(); ++j) {
      const double y = data_.counts(i, j);
      grad[2 + i] += (nu + y) * m / (nu + m) - y;
      du_dnu += -digamma(y + nu) + psi_nu - u - 1.0 + std::log(nu + m) +
                (nu + y) / (nu + m);
    }
  }
  grad[1] = 1.0 - 0.5 * std::exp(-u) + nu * du_dnu;
}

bool NegBinomialModel::write_data_csv(std::ostream& os) const {
  os << "group";
  for (int j = 1; j <= per_group(); ++j) os << ",y" << j;
  os << "\n";
  for (int i = 0; i < groups(); ++i) {
    os << (i + 1);
    for (int j = 0; j < per_group(); ++j) os << "," << data_.counts(i, j);
    os << "\n";
  }
  return true;
}

}  // namespace hrmc
