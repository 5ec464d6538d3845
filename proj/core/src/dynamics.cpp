#include "altgd/dynamics.hpp"

#include <cmath>
#include <string>

#include "altgd/numerics.hpp"

namespace altgd {

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Alt: return "alt";
    case Mode::Sim: return "sim";
    case Mode::Continuous: return "continuous";
    case Mode::AltVsOpponent: return "alt_vs_opponent";
  }
  return "?";
}

std::size_t Trajectory::rounds() const {
  if (states.empty()) return 0;
  if (has_half_states()) return states.size() / 2;
  return states.size() - 1;
}

const JointState& Trajectory::full(std::size_t t) const {
  std::size_t idx = has_half_states() ? 2 * t : t;
  if (idx >= states.size() || states[idx].stage != Stage::Full) {
    throw ContractViolation("trajectory: no Full state at t = " +
                            std::to_string(t));
  }
  return states[idx];
}

const JointState& Trajectory::half(std::size_t t) const {
  if (!has_half_states()) {
    throw ContractViolation("trajectory mode records no Half states");
  }
  std::size_t idx = 2 * t + 1;
  if (idx >= states.size() || states[idx].stage != Stage::Half) {
    throw ContractViolation("trajectory: no Half state at round " +
                            std::to_string(t));
  }
  return states[idx];
}

namespace {

// Gradient product first, then scaled add: arithmetic order is fixed
// so cross-mode comparisons are deterministic.
Vec scaled_add(const Vec& base, double scale, const Vec& grad) {
  Vec out = base;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * grad[i];
  return out;
}

void guard(const JointState& s, std::size_t step) {
  for (double x : s.x1) {
    if (!(std::abs(x) <= kDivergenceGuard)) {
      throw DivergedError(step, "diverged at step " + std::to_string(step));
    }
  }
  for (double x : s.x2) {
    if (!(std::abs(x) <= kDivergenceGuard)) {
      throw DivergedError(step, "diverged at step " + std::to_string(step));
    }
  }
}

}  // namespace

JointState sim_gd_step(const GameInstance& game, const JointState& s) {
  if (s.stage != Stage::Full) {
    throw ContractViolation("sim_gd_step expects a Full state");
  }
  check_state_dims(game, s);
  Vec g1 = mat_vec(game.matrix, s.x2);
  Vec g2 = mat_tvec(game.matrix, s.x1);
  JointState out;
  out.x1 = scaled_add(s.x1, game.steps.eta1, g1);
  out.x2 = scaled_add(s.x2, -game.steps.eta2, g2);
  out.t = s.t + 1;
  out.stage = Stage::Full;
  return out;
}

JointState alt_gd_stage1(const GameInstance& game, const JointState& s) {
  if (s.stage != Stage::Full) {
    throw ContractViolation("alt_gd_stage1 expects a Full state");
  }
  check_state_dims(game, s);
  Vec g1 = mat_vec(game.matrix, s.x2);
  JointState out;
  out.x1 = scaled_add(s.x1, game.steps.eta1, g1);
  out.x2 = s.x2;
  out.t = s.t;
  out.stage = Stage::Half;
  return out;
}

JointState alt_gd_stage2(const GameInstance& game, const JointState& s) {
  if (s.stage != Stage::Half) {
    throw ContractViolation("alt_gd_stage2 expects a Half state");
  }
  check_state_dims(game, s);
  Vec g2 = mat_tvec(game.matrix, s.x1);
  JointState out;
  out.x1 = s.x1;
  out.x2 = scaled_add(s.x2, -game.steps.eta2, g2);
  out.t = s.t + 1;
  out.stage = Stage::Full;
  return out;
}

JointState alt_gd_step(const GameInstance& game, const JointState& s) {
  return alt_gd_stage2(game, alt_gd_stage1(game, s));
}

Trajectory rollout(const GameInstance& game, Mode mode, std::size_t horizon) {
  if (mode == Mode::Continuous) {
    throw ContractViolation("rollout: use continuous_reference for Continuous");
  }
  if (mode == Mode::AltVsOpponent) {
    throw ContractViolation("rollout: use rollout_vs_opponent for AltVsOpponent");
  }
  Trajectory traj{game, mode, {}};
  traj.states.reserve(mode == Mode::Alt ? 2 * horizon + 1 : horizon + 1);
  traj.states.push_back(game.initial);
  JointState current = game.initial;
  for (std::size_t step = 0; step < horizon; ++step) {
    if (mode == Mode::Alt) {
      JointState half = alt_gd_stage1(game, current);
      guard(half, step + 1);
      traj.states.push_back(half);
      current = alt_gd_stage2(game, half);
    } else {
      current = sim_gd_step(game, current);
    }
    guard(current, step + 1);
    traj.states.push_back(current);
  }
  return traj;
}

Trajectory rollout_vs_opponent(const GameInstance& game,
                               const OpponentRule& opponent,
                               std::size_t horizon) {
  Trajectory traj{game, Mode::AltVsOpponent, {}};
  traj.states.reserve(2 * horizon + 1);
  traj.states.push_back(game.initial);
  JointState current = game.initial;
  for (std::size_t step = 0; step < horizon; ++step) {
    JointState half = alt_gd_stage1(game, current);
    guard(half, step + 1);
    traj.states.push_back(half);

    Vec next_x2 = opponent(current.t, half);
    if (next_x2.size() != game.k2()) {
      throw ContractViolation("opponent returned wrong-length vector at round " +
                              std::to_string(current.t));
    }
    for (double v : next_x2) {
      if (!std::isfinite(v)) {
        throw ContractViolation("opponent returned non-finite value at round " +
                                std::to_string(current.t));
      }
    }
    current = JointState{half.x1, std::move(next_x2), half.t + 1, Stage::Full};
    guard(current, step + 1);
    traj.states.push_back(current);
  }
  return traj;
}

namespace {

// Right-hand side of the continuous flow, flattened (x1, x2).
void flow(const GameInstance& game, const Vec& x1, const Vec& x2, Vec* d1,
          Vec* d2) {
  Vec g1 = mat_vec(game.matrix, x2);
  Vec g2 = mat_tvec(game.matrix, x1);
  d1->resize(g1.size());
  d2->resize(g2.size());
  for (std::size_t i = 0; i < g1.size(); ++i) (*d1)[i] = game.steps.eta1 * g1[i];
  for (std::size_t i = 0; i < g2.size(); ++i) (*d2)[i] = -game.steps.eta2 * g2[i];
}

}  // namespace

Trajectory continuous_reference(const GameInstance& game, double t_end,
                                double h) {
  if (!(h > 0.0) || !(t_end >= 0.0)) {
    throw ContractViolation("continuous_reference: need h > 0 and t_end >= 0");
  }
  Trajectory traj{game, Mode::Continuous, {}};
  traj.states.push_back(game.initial);
  Vec x1 = game.initial.x1;
  Vec x2 = game.initial.x2;
  Vec k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b, tmp1, tmp2;
  auto rk4_step = [&](double dt) {
    flow(game, x1, x2, &k1a, &k1b);
    tmp1 = x1; tmp2 = x2;
    for (std::size_t i = 0; i < x1.size(); ++i) tmp1[i] = x1[i] + 0.5 * dt * k1a[i];
    for (std::size_t i = 0; i < x2.size(); ++i) tmp2[i] = x2[i] + 0.5 * dt * k1b[i];
    flow(game, tmp1, tmp2, &k2a, &k2b);
    for (std::size_t i = 0; i < x1.size(); ++i) tmp1[i] = x1[i] + 0.5 * dt * k2a[i];
    for (std::size_t i = 0; i < x2.size(); ++i) tmp2[i] = x2[i] + 0.5 * dt * k2b[i];
    flow(game, tmp1, tmp2, &k3a, &k3b);
    for (std::size_t i = 0; i < x1.size(); ++i) tmp1[i] = x1[i] + dt * k3a[i];
    for (std::size_t i = 0; i < x2.size(); ++i) tmp2[i] = x2[i] + dt * k3b[i];
    flow(game, tmp1, tmp2, &k4a, &k4b);
    for (std::size_t i = 0; i < x1.size(); ++i) {
      x1[i] += dt / 6.0 * (k1a[i] + 2.0 * k2a[i] + 2.0 * k3a[i] + k4a[i]);
    }
    for (std::size_t i = 0; i < x2.size(); ++i) {
      x2[i] += dt / 6.0 * (k1b[i] + 2.0 * k2b[i] + 2.0 * k3b[i] + k4b[i]);
    }
  };
  std::size_t n_full = static_cast<std::size_t>(std::floor(t_end / h));
  double remainder = t_end - static_cast<double>(n_full) * h;
  std::size_t step = 0;
  for (; step < n_full; ++step) {
    rk4_step(h);
    JointState s{x1, x2, step + 1, Stage::Full};
    guard(s, step + 1);
    traj.states.push_back(std::move(s));
  }
  // Land exactly on t_end with a short final step when h does not divide it.
  if (remainder > 1e-12 * std::max(1.0, t_end)) {
    rk4_step(remainder);
    JointState s{x1, x2, step + 1, Stage::Full};
    guard(s, step + 1);
    traj.states.push_back(std::move(s));
  }
  return traj;
}

}  // namespace altgd
