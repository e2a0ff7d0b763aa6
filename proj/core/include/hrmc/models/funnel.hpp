#pragma once

#include "hrmc/model.hpp"

namespace hrmc {

/// Two-level funnel: v ~ N(0, 3^2), x_j | v ~ N(0, e^v I). Coordinates are
/// (v, x_1..x_d); block A = {v}, block B = {x}.
///
///   U(v, x) = 1/2 e^{-v} ||x||^2 + (d/2) v + v^2 / 18
class FunnelModel : public TargetModel {
 public:
  explicit FunnelModel(int x_dim = 20);

  int x_dim() const { return x_dim_; }

 protected:
  double potential_impl(const Vec& theta) const override;
  void grad_impl(const Vec& theta, Vec& grad) const override;

 private:
  int x_dim_;
};

/// One row of the funnel energy-budget curve: excess expected potential of
/// the centered and non-centered forms relative to v = 0, plus the kinetic
/// energy budget (mean and central 95% range of K, 2K ~ chi^2_{d+1}).
struct EnergyBudgetRow {
  double v;
  double du_centered;      // (d/2) v + v^2/18
  double du_non_centered;  // v^2/18
  double k_mean;           // (d+1)/2
  double k_lo;             // 2.5% quantile of K
  double k_hi;             // 97.5% quantile of K
};

std::vector<EnergyBudgetRow> funnel_energy_budget(int d, const Vec& v_grid);

}  // namespace hrmc
