#pragma once

#include "hrmc/hamiltonian.hpp"
#include "hrmc/types.hpp"

namespace hrmc {

enum class IntegratorKind { TwoBlock, MultiBlock };

/// Phase point with the potential and its gradient cached at `theta`.
/// Consecutive integrator steps share an endpoint, so caching keeps the cost
/// at one gradient evaluation per step.
struct IntegratorState {
  Vec theta;
  Vec p;
  double u = 0.0;
  Vec grad_u;

  bool finite() const {
    return std::isfinite(u) && theta.allFinite() && p.allFinite() && grad_u.allFinite();
  }
};

/// Evaluates the potential and gradient at theta (one counted gradient).
IntegratorState make_state(const SplitHamiltonian& h, Vec theta, Vec p);

/// The momentum time-derivative of the exact dynamics, split by block for a
/// two-block hierarchy with diagonal dependent-block mass:
///   xi_B = -dU/dtheta_B
///   xi_A,i = -dU/dtheta_A,i + 1/2 sum_{j in B} (p_j^2 / M_j - 1) dlogM_j/dtheta_A,i
/// Returns the full-dimension vector with both slices filled. Only the
/// B-components of `p` are read.
Vec xi_terms(const SplitHamiltonian& h, const Vec& theta, const Vec& p, const Vec& grad_u);
Vec xi_terms(const SplitHamiltonian& h, const Vec& theta, const Vec& p);

/// One explicit hierarchical leapfrog step for a two-block structure
/// (block 0 = A with position-independent mass, block 1 = B with mass
/// depending on theta_A). Never throws on overflow; non-finite values
/// propagate into the returned state.
IntegratorState leapfrog_two_block(const SplitHamiltonian& h, const IntegratorState& state,
                                   double eps);

/// Exact flow of the block-k kinetic Hamiltonian for time `hstep`:
/// theta_k drifts by h * M_k^{-1} p_k; every other block's momentum gets the
/// kick (h/2) * s_{j<-k} with [s]_i = sum_m v_m^2 dM_m/dtheta_{j,i}.
void block_flow(const SplitHamiltonian& h, int block, double hstep, Vec& theta, Vec& p);

/// One step of the palindromic multi-block splitting: half kick with dH0,
/// half flows in flow order, full flow of the last block, reversed half
/// flows, half dH0 kick.
IntegratorState leapfrog_multi_block(const SplitHamiltonian& h, const IntegratorState& state,
                                     double eps);

IntegratorState integrator_step(const SplitHamiltonian& h, const IntegratorState& state,
                                double eps, IntegratorKind kind);

/// Convenience for property tests: step a bare phase point.
PhasePoint integrator_step(const SplitHamiltonian& h, const PhasePoint& z, double eps,
                           IntegratorKind kind);

}  // namespace hrmc
