#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "hrmc/rng.hpp"
#include "hrmc/types.hpp"

namespace hrmc {

enum class MassFamily { Exponential, SumOfExponentials };

/// Per-coordinate feature vectors that are affine in selected conditioning
/// coordinates: x_i = [1, theta[s_i1], ..., theta[s_im]]. The source lists
/// may differ per coordinate (e.g. each beta_j conditioning on its own
/// log lambda_j) but share a common length within the block, so the
/// parameters form a matrix. Sources must lie outside the block that the
/// features parameterize.
class AffineFeatures {
 public:
  /// x_i = [1] for every coordinate (position-independent mass).
  static AffineFeatures intercept(int block_size);
  /// x_i = [1, theta[source]] with one shared conditioning coordinate.
  static AffineFeatures shared_source(int block_size, int source);
  /// Fully general per-coordinate source lists (equal lengths required).
  static AffineFeatures with_sources(std::vector<std::vector<int>> sources);

  int block_size() const { return static_cast<int>(sources_.size()); }
  int feature_dim() const { return 1 + n_sources_; }
  const std::vector<int>& sources(int local_i) const { return sources_[local_i]; }
  void eval(int local_i, const Vec& theta, Vec& x) const;

 private:
  AffineFeatures(std::vector<std::vector<int>> sources, int n_sources)
      : sources_(std::move(sources)), n_sources_(n_sources) {}
  std::vector<std::vector<int>> sources_;
  int n_sources_;
};

struct BlockMetricSpec {
  MassFamily family;
  AffineFeatures features1;
  std::optional<AffineFeatures> features2;  // second exponential of the sum family
};

/// Mass parameters: one row per block coordinate, one column per feature
/// component. slot2 matrices have zero columns for exponential-family blocks.
struct PhiParams {
  std::vector<Mat> slot1;
  std::vector<Mat> slot2;

  /// Rows: block,coordinate,slot,component,value.
  void write_csv(std::ostream& os) const;
};

/// Diagonal masses at a fixed position, with their logs.
struct MassState {
  Vec mass;
  Vec log_mass;
};

/// Block-diagonal, diagonal-per-block mass matrix family. Block k's masses
/// M_i depend only on coordinates outside block k (checked at construction):
///   exponential:          M_i = exp(phi_i . x_i(theta))
///   sum of exponentials:  M_i = exp(phi1_i . x_i1(theta)) + exp(phi2_i . x_i2(theta))
/// Exponents are clamped to [-40, 40] inside the mass evaluation only;
/// derivative contributions of a clamped branch are zero.
class MetricModel {
 public:
  MetricModel(BlockStructure blocks, std::vector<BlockMetricSpec> specs);

  const BlockStructure& structure() const { return blocks_; }
  int dim() const { return blocks_.dim(); }
  int num_blocks() const { return blocks_.num_blocks(); }
  MassFamily family(int block) const { return specs_[block].family; }
  const BlockMetricSpec& spec(int block) const { return specs_[block]; }
  /// True when some block's mass depends on the position.
  bool position_dependent() const;
  /// True when block k's mass depends on the position.
  bool block_position_dependent(int block) const;

  PhiParams zero_phi() const;
  PhiParams read_phi_csv(std::istream& is) const;

  /// Masses of one block, in block-local coordinate order.
  void mass_diag(int block, const Vec& theta, const PhiParams& phi, Vec& mass,
                 Vec& log_mass) const;

  /// d log M_i / d theta as (global coordinate, value) pairs over the
  /// coordinate's feature sources.
  std::vector<std::pair<int, double>> grad_log_mass_theta(int block, int local_i,
                                                          const Vec& theta,
                                                          const PhiParams& phi) const;

  /// d log M_i / d phi_i for both parameter slots; slot2 is resized to zero
  /// length for exponential-family blocks.
  void grad_log_mass_phi(int block, int local_i, const Vec& theta, const PhiParams& phi,
                         Vec& slot1, Vec& slot2) const;

  /// out[j] += sum_{i in block} weights[i] * d log M_i / d theta_j. The
  /// integrator's aggregate primitive; cost O(|phi| * block size).
  void accumulate_weighted_grad_log_mass(int block, const Vec& theta, const PhiParams& phi,
                                         const Vec& weights, Vec& out) const;

 private:
  BlockStructure blocks_;
  std::vector<BlockMetricSpec> specs_;
};

/// Full-dimension masses at `theta` (flat layout; every coordinate belongs
/// to exactly one block).
MassState evaluate_masses(const MetricModel& metric, const Vec& theta, const PhiParams& phi);

/// p ~ N(0, diag(mass)), one independent Gaussian per coordinate.
Vec sample_momentum(const MassState& masses, Rng& rng);

}  // namespace hrmc
