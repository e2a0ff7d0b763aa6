#pragma once

#include <utility>
#include <vector>

#include "hrmc/integrator.hpp"
#include "hrmc/rng.hpp"

namespace hrmc {

enum class UTurnRule { Euclidean, Generalized };
enum class StopReason { None, UTurn, Divergence, MaxDepth };

struct TrajectoryConfig {
  double step_size = 0.1;
  int max_depth = 10;
  double delta_max = 1000.0;
  UTurnRule uturn = UTurnRule::Euclidean;
  IntegratorKind integrator = IntegratorKind::MultiBlock;
};

/// One stored state: phase point with cached potential/gradient, the energy
/// computed at build time, and M(theta)^{-1} p (generalized rule only).
struct TrajectoryNode {
  IntegratorState state;
  double energy = 0.0;
  Vec velocity;
};

/// Time-ordered trajectory of 2^D states built by D retained doublings.
/// Discarded expansions extend neither `nodes` nor `directions`.
struct Trajectory {
  std::vector<TrajectoryNode> nodes;
  std::vector<int> directions;  // +1 forward / -1 backward per retained doubling

  int depth() const { return static_cast<int>(directions.size()); }
  int size() const { return static_cast<int>(nodes.size()); }
  /// Position of the chain's current state z0; equals the replay offset o_0.
  int initial_index() const {
    int idx = 0;
    for (size_t l = 0; l < directions.size(); ++l)
      if (directions[l] == -1) idx += 1 << l;
    return idx;
  }
};

/// Seeds a trajectory with the single state z0.
Trajectory make_trajectory(const SplitHamiltonian& h, const TrajectoryConfig& cfg,
                           IntegratorState z0);

/// Doubles the trajectory in a uniformly random direction: appends 2^j
/// forward states from the last state, or prepends 2^j states obtained by
/// integrating the momentum-negated first state (stored with momenta
/// re-negated, in time order). Returns the [begin, end) node range of the
/// new segment in the updated trajectory. Non-finite states are stored, not
/// thrown; the stopping check classifies them.
std::pair<int, int> expand(Trajectory& traj, const SplitHamiltonian& h,
                           const TrajectoryConfig& cfg, Rng& rng);

/// Endpoint U-turn test on nodes [begin, end):
/// (q_end - q_start) . p_end < 0 or (q_end - q_start) . p_start < 0.
bool check_uturn(const Trajectory& traj, int begin, int end);

/// Metric-weighted variant: rho = sum of M(q)^{-1} p over the segment
/// (constant time factor dropped); turns iff rho . p_end < 0 or
/// rho . p_start < 0.
bool check_uturn_generalized(const Trajectory& traj, int begin, int end);

struct StopFlags {
  bool stop = false;
  bool discard = false;
  bool divergent = false;
  StopReason reason = StopReason::None;  // which condition fired (informational)
};

/// Stopping cascade after a doubling to length 2^j with new segment
/// [seg_begin, seg_end) of length 2^{j-1}:
///   1. segment energy spread > delta_max          -> stop, discard, divergent
///   2. U-turn in any aligned subtree of length 2^k (k = 1..j-1) inside the
///      segment                                    -> stop, discard
///   3. full-trajectory energy spread > delta_max  -> stop, keep, divergent
///   4. full-trajectory U-turn or j >= max_depth   -> stop, keep
/// Energy spread treats any non-finite energy as infinite.
StopFlags check_stopping(const Trajectory& traj, int seg_begin, int seg_end,
                         const TrajectoryConfig& cfg);

/// Per-level record of the replay recursion, for verification.
struct ReplayLevel {
  int level;
  double alpha;
  double scale;  // c_l
  double w_old;
  double w_new;
  double block_sum_before;
  double block_sum_after;
};

struct WeightLedger {
  Vec initial_weights;
  Vec final_weights;
  std::vector<ReplayLevel> levels;
};

/// Retrospective biased replay over the retained trajectory: energy-shifted
/// base weights, level-wise biased merges with alpha = min(1, W_new/W_old)
/// (alpha = 1 when W_old = 0), then a categorical draw. If every state
/// diverged the initial index is returned.
int replay_select(const Trajectory& traj, Rng& rng, WeightLedger* ledger = nullptr);

struct TransitionResult {
  IntegratorState next;
  int depth = 0;        // retained doublings
  int n_states = 1;     // retained trajectory length
  bool divergent = false;
  double accept_stat = 1.0;  // mean acceptance over the last expanded subtree
  StopReason reason = StopReason::None;
  int selected_index = 0;
};

/// One dynamic transition: sample momentum at the current position, grow the
/// trajectory by expand + check_stopping until a stop (a discarded segment
/// is removed and terminates growth), then select the next state by replay.
TransitionResult nuts_transition(const SplitHamiltonian& h, const TrajectoryConfig& cfg,
                                 const IntegratorState& current, Rng& rng);

}  // namespace hrmc
