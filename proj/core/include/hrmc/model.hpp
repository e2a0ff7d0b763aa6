#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hrmc/types.hpp"

namespace hrmc {

/// Named group of coordinates used for the min-over-group columns of the
/// summary tables (e.g. "x" covering x_1..x_d).
struct ParamGroup {
  std::string name;
  std::vector<int> indices;
};

/// A target distribution exposed as a potential (negative log unnormalized
/// density) over unconstrained coordinates, with a hand-derived gradient.
/// Constrained parameters are log- or logit-transformed by the concrete
/// models, with the Jacobian terms folded into the potential. Additive
/// constants are dropped throughout.
///
/// Instances are immutable after construction and safe for concurrent reads;
/// the gradient-evaluation counter is the only mutable state and is atomic.
class TargetModel {
 public:
  virtual ~TargetModel() = default;

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const BlockStructure& blocks() const { return blocks_; }
  const std::vector<std::string>& parameter_names() const { return param_names_; }
  const std::vector<ParamGroup>& report_groups() const { return groups_; }

  /// U(theta), up to a model-wide additive constant.
  double potential(const Vec& theta) const {
    check_dim(theta);
    return potential_impl(theta);
  }

  /// dU/dtheta. Each call counts one gradient evaluation.
  void grad_potential(const Vec& theta, Vec& grad) const {
    check_dim(theta);
    grad.resize(dim_);
    grad_impl(theta, grad);
    grad_evals_.fetch_add(1, std::memory_order_relaxed);
  }
  Vec grad_potential(const Vec& theta) const {
    Vec g;
    grad_potential(theta, g);
    return g;
  }

  std::int64_t gradient_evals() const { return grad_evals_.load(std::memory_order_relaxed); }
  void reset_gradient_evals() const { grad_evals_.store(0, std::memory_order_relaxed); }

  /// Writes the model's dataset as CSV with a header row; returns false for
  /// models without data (funnel, gaussian).
  virtual bool write_data_csv(std::ostream&) const { return false; }

 protected:
  TargetModel(std::string name, int dim, BlockStructure blocks,
              std::vector<std::string> param_names, std::vector<ParamGroup> groups)
      : name_(std::move(name)),
        dim_(dim),
        blocks_(std::move(blocks)),
        param_names_(std::move(param_names)),
        groups_(std::move(groups)) {}

  virtual double potential_impl(const Vec& theta) const = 0;
  virtual void grad_impl(const Vec& theta, Vec& grad) const = 0;

 private:
  void check_dim(const Vec& theta) const;

  std::string name_;
  int dim_;
  BlockStructure blocks_;
  std::vector<std::string> param_names_;
  std::vector<ParamGroup> groups_;
  mutable std::atomic<std::int64_t> grad_evals_{0};
};

}  // namespace hrmc
