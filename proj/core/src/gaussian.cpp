#include "hrmc/models/gaussian.hpp"

#include <numeric>
#include <stdexcept>

namespace hrmc {

namespace {

BlockStructure single_block(int dim) {
  std::vector<int> all(dim);
  std::iota(all.begin(), all.end(), 0);
  return BlockStructure(dim, {all});
}

std::vector<std::string> theta_names(int dim) {
  std::vector<std::string> names;
  for (int j = 1; j <= dim; ++j) names.push_back("theta" + std::to_string(j));
  return names;
}

}  // namespace

GaussianModel::GaussianModel(int dim)
    : TargetModel("gaussian-test", dim, single_block(dim), theta_names(dim),
                  {{"theta", [dim] {
                      std::vector<int> all(dim);
                      std::iota(all.begin(), all.end(), 0);
                      return all;
                    }()}}) {
  if (dim < 1) throw std::invalid_argument("gaussian: dim must be >= 1");
}

}  // namespace hrmc
