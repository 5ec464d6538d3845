#pragma once

#include <cstddef>
#include <utility>

#include "altgd/dynamics.hpp"
#include "altgd/game.hpp"

namespace altgd {

/// Regret of an alternating-play run against a fixed comparator,
/// evaluated three ways (summed definition, closed form, upper bound).
struct RegretReport {
  Vec fixed_strategy;
  double summed_regret = 0.0;
  double closed_form_regret = 0.0;
  double bound = 0.0;
  std::size_t horizon = 0;
};

/// Sum of <x1^t, A x2^t> over Full states of a simultaneous run.
double cumulative_utility_sim(const Trajectory& traj);

/// Sum of <x1^{t+1} + x1^t, A x2^t> over rounds of an alternating run;
/// x1^{t+1} is read from the recorded Half states.
double cumulative_utility_alt(const Trajectory& traj);

/// Per-step energy/payoff identity for agent 1: returns
///   lhs = (|x1^{t+1}|^2 - |x1^t|^2) / eta1
///   rhs = <x1^{t+1} + x1^t, A x2^t>
/// which Lemma-style conservation says are equal.
std::pair<double, double> energy_delta_agent1(const GameInstance& game,
                                              const JointState& before_full,
                                              const JointState& after_half);

/// Same identity for agent 2 across Stage 2:
///   lhs = (|x2^{t+1}|^2 - |x2^t|^2) / eta2
///   rhs = -<x1^{t+1}, A (x2^{t+1} + x2^t)>
std::pair<double, double> energy_delta_agent2(const GameInstance& game,
                                              const JointState& half,
                                              const JointState& after_full);

/// Literal alternating-play regret: <2 x1, sum A x2^t> minus the
/// cumulative alternating utility.
double regret_alt_summed(const Trajectory& traj, const Vec& x1_fixed);

/// Closed form needing only the first and last agent-1 strategies:
///   (<2x - last, last> - <2x - first, first>) / eta1.
double regret_alt_closed_form(const GameInstance& game, const Vec& x1_fixed,
                              const Vec& x1_first, const Vec& x1_last);

/// Horizon-independent regret bound (<first - 2x, first> + |x|^2) / eta1.
double regret_bound(const GameInstance& game, const Vec& x1_fixed,
                    const Vec& x1_first);

/// Simultaneous-play regret: <x1, sum A x2^t> - sum <x1^t, A x2^t>.
double regret_sim_summed(const Trajectory& traj, const Vec& x1_fixed);

RegretReport regret_report(const Trajectory& traj, const Vec& x1_fixed);

/// |x1|^2/eta1 + |x2|^2/eta2 + <x1, A x2>; conserved by alternating play.
double perturbed_energy(const GameInstance& game, const JointState& s);

/// |x1|^2/eta1 + |x2|^2/eta2; the continuous-time conserved quantity,
/// only approximately conserved by alternating play.
double weighted_energy(const GameInstance& game, const JointState& s);

}  // namespace altgd
