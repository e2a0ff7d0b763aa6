#pragma once

#include "hrmc/model.hpp"

namespace hrmc {

/// Standard Gaussian test target, U = ||theta||^2 / 2, as a single block.
class GaussianModel : public TargetModel {
 public:
  explicit GaussianModel(int dim = 10);

 protected:
  double potential_impl(const Vec& theta) const override { return 0.5 * theta.squaredNorm(); }
  void grad_impl(const Vec& theta, Vec& grad) const override { grad = theta; }
};

}  // namespace hrmc
