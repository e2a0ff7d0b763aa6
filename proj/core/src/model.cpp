#include "hrmc/model.hpp"

#include <stdexcept>

namespace hrmc {

void TargetModel::check_dim(const Vec& theta) const {
  if (theta.size() != dim_)
    throw std::invalid_argument("model '" + name_ + "': position has length " +
                                std::to_string(theta.size()) + ", expected " +
                                std::to_string(dim_));
}

}  // namespace hrmc
