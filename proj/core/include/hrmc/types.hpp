#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hrmc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Position/momentum pair. Both vectors always have the same length; entries
/// may be non-finite, which downstream trajectory logic classifies as
/// divergence rather than an error.
struct PhasePoint {
  Vec theta;
  Vec momentum;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }

/// Ordered partition of the coordinate indices {0..dim-1} into K disjoint
/// blocks, plus the permutation in which the splitting integrator applies the
/// per-block flows.
class BlockStructure {
 public:
  /// `blocks[k]` lists the global coordinate indices of block k. The blocks
  /// must be disjoint and cover {0..dim-1}. `flow_order` must be a
  /// permutation of {0..K-1}; empty means identity.
  BlockStructure(int dim, std::vector<std::vector<int>> blocks,
                 std::vector<int> flow_order = {});

  int dim() const { return dim_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<int>& block(int k) const { return blocks_[k]; }
  int block_size(int k) const { return static_cast<int>(blocks_[k].size()); }
  const std::vector<int>& flow_order() const { return flow_order_; }
  /// Index of the block containing global coordinate i.
  int block_of(int i) const { return owner_[i]; }

 private:
  int dim_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> flow_order_;
  std::vector<int> owner_;
};

}  // namespace hrmc
