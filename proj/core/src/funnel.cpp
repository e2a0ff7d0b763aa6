#include "hrmc/models/funnel.hpp"

#include <cmath>
#include <stdexcept>

#include "hrmc/special.hpp"

namespace hrmc {

namespace {

BlockStructure funnel_blocks(int x_dim) {
  std::vector<int> b_block(x_dim);
  for (int j = 0; j < x_dim; ++j) b_block[j] = j + 1;
  return BlockStructure(x_dim + 1, {{0}, b_block});
}

std::vector<std::string> funnel_names(int x_dim) {
  std::vector<std::string> names{"v"};
  for (int j = 1; j <= x_dim; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

std::vector<ParamGroup> funnel_groups(int x_dim) {
  ParamGroup x{"x", {}};
  for (int j = 1; j <= x_dim; ++j) x.indices.push_back(j);
  return {{"v", {0}}, x};
}

}  // namespace

FunnelModel::FunnelModel(int x_dim)
    : TargetModel("funnel", x_dim + 1, funnel_blocks(x_dim), funnel_names(x_dim),
                  funnel_groups(x_dim)),
      x_dim_(x_dim) {
  if (x_dim < 1) throw std::invalid_argument("funnel: x_dim must be >= 1");
}

double FunnelModel::potential_impl(const Vec& theta) const {
  const double v = theta[0];
  const double x2 = theta.tail(x_dim_).squaredNorm();
  return 0.5 * std::exp(-v) * x2 + 0.5 * x_dim_ * v + v * v / 18.0;
}

void FunnelModel::grad_impl(const Vec& theta, Vec& grad) const {
  const double v = theta[0];
  const double ev = std::exp(-v);
  const double x2 = theta.tail(x_dim_).squaredNorm();
  grad[0] = -0.5 * ev * x2 + 0.5 * x_dim_ + v / 9.0;
  grad.tail(x_dim_) = ev * theta.tail(x_dim_);
}

std::vector<EnergyBudgetRow> funnel_energy_budget(int d, const Vec& v_grid) {
  if (d < 1) throw std::invalid_argument("funnel_energy_budget: d must be >= 1");
  const double dof = d + 1;
  const double k_mean = 0.5 * dof;
  const double k_lo = 0.5 * chi_squared_quantile(dof, 0.025);
  const double k_hi = 0.5 * chi_squared_quantile(dof, 0.975);
  std::vector<EnergyBudgetRow> rows;
  rows.reserve(v_grid.size());
  for (double v : v_grid)
    rows.push_back({v, 0.5 * d * v + v * v / 18.0, v * v / 18.0, k_mean, k_lo, k_hi});
  return rows;
}

}  // namespace hrmc
