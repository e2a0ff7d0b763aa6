#include "hrmc/hamiltonian.hpp"

namespace hrmc {

double SplitHamiltonian::h0(const Vec& theta) const {
  const MassState m = masses(theta);
  return model_->potential(theta) + 0.5 * m.log_mass.sum();
}

double SplitHamiltonian::hk(int k, const Vec& theta, const Vec& p) const {
  Vec mass, log_mass;
  metric_->mass_diag(k, theta, *phi_, mass, log_mass);
  const auto& idx = blocks().block(k);
  double kinetic = 0.0;
  for (size_t i = 0; i < idx.size(); ++i) kinetic += p[idx[i]] * p[idx[i]] / mass[i];
  return 0.5 * kinetic;
}

double SplitHamiltonian::energy(const Vec& theta, const Vec& p) const {
  return energy(model_->potential(theta), masses(theta), p);
}

double SplitHamiltonian::energy(double u, const MassState& m, const Vec& p) const {
  const double kinetic = (p.array().square() / m.mass.array()).sum();
  return u + 0.5 * kinetic + 0.5 * m.log_mass.sum();
}

Vec SplitHamiltonian::grad_h0(const Vec& theta, const Vec& grad_u) const {
  Vec out = grad_u;
  for (int k = 0; k < metric_->num_blocks(); ++k) {
    if (!metric_->block_position_dependent(k)) continue;
    const Vec half = Vec::Constant(blocks().block_size(k), 0.5);
    metric_->accumulate_weighted_grad_log_mass(k, theta, *phi_, half, out);
  }
  return out;
}

}  // namespace hrmc
