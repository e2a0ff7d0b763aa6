#include "hrmc/types.hpp"

#include <numeric>
#include <stdexcept>

namespace hrmc {

BlockStructure::BlockStructure(int dim, std::vector<std::vector<int>> blocks,
                               std::vector<int> flow_order)
    : dim_(dim), blocks_(std::move(blocks)), flow_order_(std::move(flow_order)) {
  if (dim <= 0) throw std::invalid_argument("BlockStructure: dim must be positive");
  if (blocks_.empty()) throw std::invalid_argument("BlockStructure: need at least one block");
  owner_.assign(dim_, -1);
  for (int k = 0; k < num_blocks(); ++k) {
    if (blocks_[k].empty())
      throw std::invalid_argument("BlockStructure: empty block " + std::to_string(k));
    for (int i : blocks_[k]) {
      if (i < 0 || i >= dim_)
        throw std::invalid_argument("BlockStructure: coordinate index out of range");
      if (owner_[i] != -1)
        throw std::invalid_argument("BlockStructure: blocks are not disjoint");
      owner_[i] = k;
    }
  }
  for (int i = 0; i < dim_; ++i)
    if (owner_[i] == -1)
      throw std::invalid_argument("BlockStructure: blocks do not cover all coordinates");

  if (flow_order_.empty()) {
    flow_order_.resize(blocks_.size());
    std::iota(flow_order_.begin(), flow_order_.end(), 0);
  }
  if (static_cast<int>(flow_order_.size()) != num_blocks())
    throw std::invalid_argument("BlockStructure: flow_order size mismatch");
  std::vector<bool> seen(blocks_.size(), false);
  for (int k : flow_order_) {
    if (k < 0 || k >= num_blocks() || seen[k])
      throw std::invalid_argument("BlockStructure: flow_order is not a permutation");
    seen[k] = true;
  }
}

}  // namespace hrmc
