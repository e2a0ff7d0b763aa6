#include "hrmc/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hrmc {

namespace {

TrajectoryNode make_node(const SplitHamiltonian& h, const TrajectoryConfig& cfg,
                         IntegratorState state) {
  TrajectoryNode node;
  const MassState masses = h.masses(state.theta);
  node.energy = h.energy(state.u, masses, state.p);
  if (cfg.uturn == UTurnRule::Generalized)
    node.velocity = state.p.cwiseQuotient(masses.mass);
  node.state = std::move(state);
  return node;
}

/// Energy spread over nodes [begin, end); any non-finite energy counts as an
/// infinite spread.
double energy_spread(const Trajectory& traj, int begin, int end) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int t = begin; t < end; ++t) {
    const double e = traj.nodes[t].energy;
    if (!std::isfinite(e)) return std::numeric_limits<double>::infinity();
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  return hi - lo;
}

bool uturn(const Trajectory& traj, int begin, int end, UTurnRule rule) {
  return rule == UTurnRule::Generalized ? check_uturn_generalized(traj, begin, end)
                                        : check_uturn(traj, begin, end);
}

}  // namespace

Trajectory make_trajectory(const SplitHamiltonian& h, const TrajectoryConfig& cfg,
                           IntegratorState z0) {
  Trajectory traj;
  traj.nodes.push_back(make_node(h, cfg, std::move(z0)));
  return traj;
}

std::pair<int, int> expand(Trajectory& traj, const SplitHamiltonian& h,
                           const TrajectoryConfig& cfg, Rng& rng) {
  const int len = traj.size();
  const int v = rng.rademacher();
  traj.directions.push_back(v);

  std::vector<TrajectoryNode> segment;
  segment.reserve(len);
  IntegratorState cur = (v == +1) ? traj.nodes.back().state : traj.nodes.front().state;
  if (v == -1) cur.p = -cur.p;
  for (int k = 0; k < len; ++k) {
    // once a state is non-finite, further integration cannot recover; the
    // whole segment is discarded by the divergence check, so stop stepping
    if (cur.finite()) cur = integrator_step(h, cur, cfg.step_size, cfg.integrator);
    IntegratorState stored = cur;
    if (v == -1) stored.p = -stored.p;
    segment.push_back(make_node(h, cfg, std::move(stored)));
  }

  if (v == +1) {
    for (auto& node : segment) traj.nodes.push_back(std::move(node));
    return {len, 2 * len};
  }
  std::reverse(segment.begin(), segment.end());
  traj.nodes.insert(traj.nodes.begin(), std::make_move_iterator(segment.begin()),
                    std::make_move_iterator(segment.end()));
  return {0, len};
}

bool check_uturn(const Trajectory& traj, int begin, int end) {
  const Vec dq = traj.nodes[end - 1].state.theta - traj.nodes[begin].state.theta;
  return dq.dot(traj.nodes[end - 1].state.p) < 0.0 ||
         dq.dot(traj.nodes[begin].state.p) < 0.0;
}

bool check_uturn_generalized(const Trajectory& traj, int begin, int end) {
  Vec rho = traj.nodes[begin].velocity;
  for (int t = begin + 1; t < end; ++t) rho += traj.nodes[t].velocity;
  return rho.dot(traj.nodes[end - 1].state.p) < 0.0 ||
         rho.dot(traj.nodes[begin].state.p) < 0.0;
}

StopFlags check_stopping(const Trajectory& traj, int seg_begin, int seg_end,
                         const TrajectoryConfig& cfg) {
  StopFlags flags;
  const int j = traj.depth();

  if (energy_spread(traj, seg_begin, seg_end) > cfg.delta_max)
    return {true, true, true, StopReason::Divergence};

  const int seg_len = seg_end - seg_begin;
  for (int sub = 2; sub < seg_len; sub *= 2)
    for (int off = seg_begin; off + sub <= seg_end; off += sub)
      if (uturn(traj, off, off + sub, cfg.uturn))
        return {true, true, false, StopReason::UTurn};
  if (seg_len >= 2 && uturn(traj, seg_begin, seg_end, cfg.uturn))
    return {true, true, false, StopReason::UTurn};

  if (energy_spread(traj, 0, traj.size()) > cfg.delta_max)
    return {true, false, true, StopReason::Divergence};

  if (uturn(traj, 0, traj.size(), cfg.uturn)) {
    flags.stop = true;
    flags.reason = StopReason::UTurn;
  }
  if (j >= cfg.max_depth) {
    flags.stop = true;
    if (flags.reason == StopReason::None) flags.reason = StopReason::MaxDepth;
  }
  return flags;
}

int replay_select(const Trajectory& traj, Rng& rng, WeightLedger* ledger) {
  const int n = traj.size();
  const int depth = traj.depth();

  double min_energy = std::numeric_limits<double>::infinity();
  for (const auto& node : traj.nodes)
    if (std::isfinite(node.energy)) min_energy = std::min(min_energy, node.energy);
  if (!std::isfinite(min_energy)) return traj.initial_index();

  // energy shift is a pure rescaling and cancels in the categorical draw
  Vec w(n);
  for (int t = 0; t < n; ++t) {
    const double e = traj.nodes[t].energy;
    w[t] = std::isfinite(e) ? std::exp(-(e - min_energy)) : 0.0;
  }
  if (ledger) ledger->initial_weights = w;

  int offset = 0;
  for (int level = depth; level >= 1; --level) {
    const int half = 1 << (level - 1);
    const int v = traj.directions[level - 1];
    const int old_begin = (v == +1) ? offset : offset + half;
    const int new_begin = (v == +1) ? offset + half : offset;

    const double w_old = w.segment(old_begin, half).sum();
    const double w_new = w.segment(new_begin, half).sum();
    const double alpha = (w_old == 0.0) ? 1.0 : std::min(1.0, w_new / w_old);
    const double block_sum = w_old + w_new;
    const double denom = (1.0 - alpha) * w_old + alpha * w_new;
    const double scale = denom > 0.0 ? block_sum / denom : 0.0;

    w.segment(old_begin, half) *= scale * (1.0 - alpha);
    w.segment(new_begin, half) *= scale * alpha;

    if (ledger)
      ledger->levels.push_back({level, alpha, scale, w_old, w_new, block_sum,
                                w.segment(offset, 2 * half).sum()});
    if (v == -1) offset += half;
  }
  if (ledger) ledger->final_weights = w;

  const double total = w.sum();
  if (!(total > 0.0) || !std::isfinite(total)) return traj.initial_index();
  return rng.categorical(w);
}

TransitionResult nuts_transition(const SplitHamiltonian& h, const TrajectoryConfig& cfg,
                                 const IntegratorState& current, Rng& rng) {
  IntegratorState z0 = current;
  const MassState masses = h.masses(z0.theta);
  z0.p = sample_momentum(masses, rng);
  const double h_init = h.energy(z0.u, masses, z0.p);

  Trajectory traj = make_trajectory(h, cfg, std::move(z0));
  TransitionResult result;
  std::vector<double> discarded_energies;

  while (traj.depth() < cfg.max_depth) {
    const auto [seg_begin, seg_end] = expand(traj, h, cfg, rng);
    const StopFlags flags = check_stopping(traj, seg_begin, seg_end, cfg);
    result.divergent = result.divergent || flags.divergent;
    if (flags.discard) {
      for (int t = seg_begin; t < seg_end; ++t)
        discarded_energies.push_back(traj.nodes[t].energy);
      traj.nodes.erase(traj.nodes.begin() + seg_begin, traj.nodes.begin() + seg_end);
      traj.directions.pop_back();
      result.reason = flags.reason;
      break;
    }
    if (flags.stop) {
      result.reason = flags.reason;
      break;
    }
  }
  if (result.reason == StopReason::None) result.reason = StopReason::MaxDepth;

  // mean acceptance over the last retained expansion; if nothing was
  // retained, fall back to the discarded segment (its near-zero acceptance
  // is the step-size controller's shrink signal)
  auto mean_accept = [&](auto&& energies, int count) {
    double acc = 0.0;
    for (int t = 0; t < count; ++t) {
      const double e = energies(t);
      acc += std::isfinite(e) ? std::exp(std::min(h_init - e, 0.0)) : 0.0;
    }
    return acc / count;
  };
  if (traj.depth() >= 1) {
    const int half = 1 << (traj.depth() - 1);
    const int begin = traj.directions.back() == +1 ? half : 0;
    result.accept_stat =
        mean_accept([&](int t) { return traj.nodes[begin + t].energy; }, half);
  } else if (!discarded_energies.empty()) {
    result.accept_stat = mean_accept([&](int t) { return discarded_energies[t]; },
                                     static_cast<int>(discarded_energies.size()));
  } else {
    result.accept_stat = 1.0;
  }

  result.depth = traj.depth();
  result.n_states = traj.size();
  result.selected_index = replay_select(traj, rng);
  result.next = traj.nodes[result.selected_index].state;
  return result;
}

}  // namespace hrmc
