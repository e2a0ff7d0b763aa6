#include "hrmc/integrator.hpp"

#include <stdexcept>

namespace hrmc {

namespace {

// Xi_A's metric correction: 1/2 sum_j (p_j^2/M_j - 1) dlogM_j/dtheta_A,
// accumulated into `out` (nonzero only on the B-block's feature sources).
void xi_metric_correction(const SplitHamiltonian& h, const Vec& theta, const Vec& p,
                          Vec& out) {
  const auto& blocks = h.blocks();
  constexpr int kB = 1;
  Vec mass, log_mass;
  h.metric().mass_diag(kB, theta, h.phi(), mass, log_mass);
  const auto& idx = blocks.block(kB);
  Vec weights(idx.size());
  for (size_t j = 0; j < idx.size(); ++j)
    weights[j] = 0.5 * (p[idx[j]] * p[idx[j]] / mass[j] - 1.0);
  h.metric().accumulate_weighted_grad_log_mass(kB, theta, h.phi(), weights, out);
}

void require_two_block(const SplitHamiltonian& h) {
  if (h.blocks().num_blocks() != 2)
    throw std::invalid_argument("two-block integrator requires exactly two blocks");
  if (h.metric().block_position_dependent(0))
    throw std::invalid_argument("two-block integrator requires a constant A-block mass");
}

}  // namespace

IntegratorState make_state(const SplitHamiltonian& h, Vec theta, Vec p) {
  IntegratorState s;
  s.u = h.potential(theta);
  h.grad_potential(theta, s.grad_u);
  s.theta = std::move(theta);
  s.p = std::move(p);
  return s;
}

Vec xi_terms(const SplitHamiltonian& h, const Vec& theta, const Vec& p, const Vec& grad_u) {
  Vec xi = -grad_u;
  xi_metric_correction(h, theta, p, xi);
  // the correction only touches A-side coordinates (the B-features' sources),
  // so xi_B = -grad_B U already holds
  return xi;
}

Vec xi_terms(const SplitHamiltonian& h, const Vec& theta, const Vec& p) {
  Vec grad_u;
  h.grad_potential(theta, grad_u);
  return xi_terms(h, theta, p, grad_u);
}

IntegratorState leapfrog_two_block(const SplitHamiltonian& h, const IntegratorState& state,
                                   double eps) {
  require_two_block(h);
  const auto& blocks = h.blocks();
  const auto& a_idx = blocks.block(0);
  const auto& b_idx = blocks.block(1);
  const double half = 0.5 * eps;

  Vec theta = state.theta;
  Vec p = state.p;

  // B then A half momentum updates at the initial position
  for (int i : b_idx) p[i] -= half * state.grad_u[i];
  Vec corr = Vec::Zero(blocks.dim());
  xi_metric_correction(h, theta, p, corr);
  for (int i : a_idx) p[i] += half * (-state.grad_u[i] + corr[i]);

  // A-block drift in its constant metric
  Vec mass_a, log_mass_a;
  h.metric().mass_diag(0, theta, h.phi(), mass_a, log_mass_a);
  Vec mass_b_old, lm_b;
  h.metric().mass_diag(1, theta, h.phi(), mass_b_old, lm_b);
  for (size_t i = 0; i < a_idx.size(); ++i) theta[a_idx[i]] += eps * p[a_idx[i]] / mass_a[i];

  // B-block drift with the averaged inverse mass at the two A endpoints
  Vec mass_b_new;
  h.metric().mass_diag(1, theta, h.phi(), mass_b_new, lm_b);
  const Vec p_b_half = p;  // A-side entries unused below
  for (size_t i = 0; i < b_idx.size(); ++i)
    theta[b_idx[i]] += half * (1.0 / mass_b_old[i] + 1.0 / mass_b_new[i]) * p[b_idx[i]];

  // closing half updates at the new position; Xi_A reuses the half-step p_B
  IntegratorState next;
  next.u = h.potential(theta);
  h.grad_potential(theta, next.grad_u);
  for (int i : b_idx) p[i] -= half * next.grad_u[i];
  corr.setZero();
  xi_metric_correction(h, theta, p_b_half, corr);
  for (int i : a_idx) p[i] += half * (-next.grad_u[i] + corr[i]);

  next.theta = std::move(theta);
  next.p = std::move(p);
  return next;
}

void block_flow(const SplitHamiltonian& h, int block, double hstep, Vec& theta, Vec& p) {
  const auto& blocks = h.blocks();
  const auto& idx = blocks.block(block);
  Vec mass, log_mass;
  h.metric().mass_diag(block, theta, h.phi(), mass, log_mass);

  // v_k and the kick coefficients are constant along the flow: M_k depends
  // only on the other blocks' positions and p_k is untouched.
  if (h.metric().block_position_dependent(block)) {
    Vec weights(idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
      weights[i] = p[idx[i]] * p[idx[i]] / mass[i];  // v_i^2 M_i
    Vec kick = Vec::Zero(blocks.dim());
    h.metric().accumulate_weighted_grad_log_mass(block, theta, h.phi(), weights, kick);
    p += 0.5 * hstep * kick;  // kick is zero on block k's own coordinates
  }
  for (size_t i = 0; i < idx.size(); ++i) theta[idx[i]] += hstep * p[idx[i]] / mass[i];
}

IntegratorState leapfrog_multi_block(const SplitHamiltonian& h, const IntegratorState& state,
                                     double eps) {
  const auto& order = h.blocks().flow_order();
  const int k_last = static_cast<int>(order.size()) - 1;
  const double half = 0.5 * eps;

  Vec theta = state.theta;
  Vec p = state.p - half * h.grad_h0(theta, state.grad_u);
  for (int r = 0; r < k_last; ++r) block_flow(h, order[r], half, theta, p);
  block_flow(h, order[k_last], eps, theta, p);
  for (int r = k_last - 1; r >= 0; --r) block_flow(h, order[r], half, theta, p);

  IntegratorState next;
  next.u = h.potential(theta);
  h.grad_potential(theta, next.grad_u);
  p -= half * h.grad_h0(theta, next.grad_u);
  next.theta = std::move(theta);
  next.p = std::move(p);
  return next;
}

IntegratorState integrator_step(const SplitHamiltonian& h, const IntegratorState& state,
                                double eps, IntegratorKind kind) {
  return kind == IntegratorKind::TwoBlock ? leapfrog_two_block(h, state, eps)
                                          : leapfrog_multi_block(h, state, eps);
}

PhasePoint integrator_step(const SplitHamiltonian& h, const PhasePoint& z, double eps,
                           IntegratorKind kind) {
  const IntegratorState next =
      integrator_step(h, make_state(h, z.theta, z.momentum), eps, kind);
  return {next.theta, next.p};
}

}  // namespace hrmc
