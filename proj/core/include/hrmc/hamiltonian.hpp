#pragma once

#include "hrmc/metric.hpp"
#include "hrmc/model.hpp"
#include "hrmc/types.hpp"

namespace hrmc {

/// Target plus metric plus current mass parameters, with the Hamiltonian
/// split the integrators need:
///
///   H(theta, p) = H0(theta) + sum_k Hk(theta, p)
///   H0 = U + 1/2 sum_i log M_i,   Hk = 1/2 p_k' M_k(theta_{-k})^{-1} p_k
///
/// Holds references only; the caller keeps model/metric/phi alive. phi may
/// be updated in place between integrator calls (adaptation).
class SplitHamiltonian {
 public:
  SplitHamiltonian(const TargetModel& model, const MetricModel& metric, const PhiParams& phi)
      : model_(&model), metric_(&metric), phi_(&phi) {}

  int dim() const { return model_->dim(); }
  const BlockStructure& blocks() const { return model_->blocks(); }
  const TargetModel& model() const { return *model_; }
  const MetricModel& metric() const { return *metric_; }
  const PhiParams& phi() const { return *phi_; }

  double potential(const Vec& theta) const { return model_->potential(theta); }
  void grad_potential(const Vec& theta, Vec& grad) const { model_->grad_potential(theta, grad); }
  MassState masses(const Vec& theta) const { return evaluate_masses(*metric_, theta, *phi_); }

  /// U + 1/2 sum log M.
  double h0(const Vec& theta) const;
  /// Kinetic term of block k.
  double hk(int k, const Vec& theta, const Vec& p) const;
  /// Full Hamiltonian; non-finite results propagate (divergence signal).
  double energy(const Vec& theta, const Vec& p) const;
  /// Full Hamiltonian reusing a known potential value and mass state.
  double energy(double u, const MassState& masses, const Vec& p) const;

  /// dH0/dtheta given the already-evaluated potential gradient.
  Vec grad_h0(const Vec& theta, const Vec& grad_u) const;

 private:
  const TargetModel* model_;
  const MetricModel* metric_;
  const PhiParams* phi_;
};

}  // namespace hrmc
