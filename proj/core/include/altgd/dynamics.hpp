#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "altgd/game.hpp"

namespace altgd {

enum class Mode { Alt, Sim, Continuous, AltVsOpponent };

std::string mode_name(Mode m);

/// Arbitrary opponent update: receives the round index and the state
/// after agent 1's Stage-1 update, returns agent 2's next strategy.
using OpponentRule =
    std::function<Vec(std::size_t t, const JointState& after_stage1)>;

/// Time-ordered state sequence. Alt-style modes interleave Half states:
///   [Full 0, Half 0, Full 1, Half 1, ..., Full T]
/// Sim and Continuous record Full states only.
struct Trajectory {
  GameInstance game;
  Mode mode;
  std::vector<JointState> states;

  /// Number of completed update rounds T.
  std::size_t rounds() const;
  bool has_half_states() const {
    return mode == Mode::Alt || mode == Mode::AltVsOpponent;
  }
  const JointState& full(std::size_t t) const;
  const JointState& half(std::size_t t) const;
};

/// Simultaneous update: both agents read the old state.
JointState sim_gd_step(const GameInstance& game, const JointState& s);

/// Agent 1's half-update: x1 <- x1 + eta1 * A x2.
JointState alt_gd_stage1(const GameInstance& game, const JointState& s);

/// Agent 2's update from the half state: x2 <- x2 - eta2 * A^T x1.
JointState alt_gd_stage2(const GameInstance& game, const JointState& s);

/// Full alternating round, stage2 after stage1.
JointState alt_gd_step(const GameInstance& game, const JointState& s);

/// Iterates the chosen update T times from game.initial. Alt mode
/// records the Half state of every round. Throws DivergedError when any
/// component exceeds 1e300 (expected for long SimGD runs).
Trajectory rollout(const GameInstance& game, Mode mode, std::size_t horizon);

/// Agent 1 plays Stage 1 each round; agent 2's strategy is whatever the
/// opponent rule returns. The rule's output is validated per round.
Trajectory rollout_vs_opponent(const GameInstance& game,
                               const OpponentRule& opponent,
                               std::size_t horizon);

/// Classical RK4 integration of the continuous-time flow
///   dx1/dt =  eta1 A x2,  dx2/dt = -eta2 A^T x1
/// sampled every substep. Test oracle, not a product feature.
Trajectory continuous_reference(const GameInstance& game, double t_end,
                                double h = 1e-3);

constexpr double kDivergenceGuard = 1e300;

}  // namespace altgd
