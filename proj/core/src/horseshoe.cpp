#include "hrmc/models/horseshoe.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hrmc/rng.hpp"
#include "hrmc/special.hpp"

namespace hrmc {

namespace {

// Coordinate layout: [beta0, beta_1..p, ltilde_1..p].
BlockStructure horseshoe_blocks(int p) {
  std::vector<int> a{0};
  for (int j = 0; j < p; ++j) a.push_back(1 + p + j);
  std::vector<int> b;
  for (int j = 0; j < p; ++j) b.push_back(1 + j);
  return BlockStructure(1 + 2 * p, {a, b});
}

std::vector<std::string> horseshoe_names(int p) {
  std::vector<std::string> names{"beta0"};
  for (int j = 1; j <= p; ++j) names.push_back("beta" + std::to_string(j));
  for (int j = 1; j <= p; ++j) names.push_back("log_lambda" + std::to_string(j));
  return names;
}

std::vector<ParamGroup> horseshoe_groups(int p) {
  ParamGroup beta{"beta", {}}, llam{"log_lambda", {}};
  for (int j = 0; j < p; ++j) beta.indices.push_back(1 + j);
  for (int j = 0; j < p; ++j) llam.indices.push_back(1 + p + j);
  return {{"beta0", {0}}, beta, llam};
}

}  // namespace

HorseshoeData make_horseshoe_data(int n, int p, std::uint64_t seed) {
  if (n < 1 || p < 1) throw std::invalid_argument("horseshoe data: n, p must be >= 1");
  Rng rng(seed);
  HorseshoeData data;
  data.x.resize(n, p);
  data.y.resize(n);
  // Sigma = 0.2 I + 0.8 * ones: shared factor plus independent noise.
  const double shared = std::sqrt(0.8), indep = std::sqrt(0.2);
  for (int i = 0; i < n; ++i) {
    const double z0 = rng.normal();
    for (int j = 0; j < p; ++j) data.x(i, j) = shared * z0 + indep * rng.normal();
  }
  Vec beta_true = Vec::Zero(p);
  for (int j = 0; j < std::min(5, p); ++j) beta_true[j] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double eta = data.x.row(i).dot(beta_true);
    data.y[i] = rng.uniform() < logistic(eta) ? 1 : 0;
  }
  return data;
}

HorseshoeModel::HorseshoeModel(HorseshoeData data, double tau, double sigma0)
    : TargetModel("horseshoe", 1 + 2 * static_cast<int>(data.x.cols()),
                  horseshoe_blocks(static_cast<int>(data.x.cols())),
                  horseshoe_names(static_cast<int>(data.x.cols())),
                  horseshoe_groups(static_cast<int>(data.x.cols()))),
      data_(std::move(data)),
      tau2_(tau * tau),
      sigma0_sq_(sigma0 * sigma0) {
  if (data_.x.rows() != data_.y.size())
    throw std::invalid_argument("horseshoe: covariate/response row mismatch");
}

double HorseshoeModel::potential_impl(const Vec& theta) const {
  const int np = p();
  const double beta0 = theta[0];
  const auto beta = theta.segment(1, np);
  const auto ltilde = theta.segment(1 + np, np);

  double u = 0.5 * beta0 * beta0 / sigma0_sq_;
  for (int i = 0; i < n(); ++i) {
    const double eta = beta0 + data_.x.row(i).dot(beta);
    u += log1p_exp(eta) - data_.y[i] * eta;
  }
  for (int j = 0; j < np; ++j) {
    // beta prior and half-Cauchy in log coordinates; the linear ltilde terms
    // from the two pieces cancel.
    u += 0.5 * beta[j] * beta[j] * std::exp(-2.0 * ltilde[j]) / tau2_;
    u += log1p_exp(2.0 * ltilde[j]);
  }
  return u;
}

void HorseshoeModel::grad_impl(const Vec& theta, Vec& grad) const {
  const int np = p();
  const double beta0 = theta[0];
  const auto beta = theta.segment(1, np);
  const auto ltilde = theta.segment(1 + np, np);

  grad.setZero();
  grad[0] = beta0 / sigma0_sq_;
  for (int i = 0; i < n(); ++i) {
    const double eta = beta0 + data_.x.row(i).dot(beta);
    const double resid = logistic(eta) - data_.y[i];
    grad[0] += resid;
    grad.segment(1, np) += resid * data_.x.row(i).transpose();
  }
  for (int j = 0; j < np; ++j) {
    const double prec = std::exp(-2.0 * ltilde[j]) / tau2_;
    grad[1 + j] += beta[j] * prec;
    grad[1 + np + j] = -beta[j] * beta[j] * prec + 2.0 * logistic(2.0 * ltilde[j]);
  }
}

bool HorseshoeModel::write_data_csv(std::ostream& os) const {
  for (int j = 1; j <= p(); ++j) os << "x" << j << ",";
  os << "y\n";
  for (int i = 0; i < n(); ++i) {
    for (int j = 0; j < p(); ++j) os << data_.x(i, j) << ",";
    os << data_.y[i] << "\n";
  }
  return true;
}

}  // namespace hrmc
