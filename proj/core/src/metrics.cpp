#include "altgd/metrics.hpp"

#include "altgd/numerics.hpp"

namespace altgd {

double cumulative_utility_sim(const Trajectory& traj) {
  if (traj.mode != Mode::Sim) {
    throw ContractViolation("cumulative_utility_sim expects a Sim trajectory");
  }
  double total = 0.0;
  for (const JointState& s : traj.states) {
    total += payoff(traj.game, s);
  }
  return total;
}

double cumulative_utility_alt(const Trajectory& traj) {
  if (!traj.has_half_states()) {
    throw ContractViolation("cumulative_utility_alt needs recorded Half states");
  }
  double total = 0.0;
  for (std::size_t t = 0; t < traj.rounds(); ++t) {
    const JointState& full = traj.full(t);
    const JointState& half = traj.half(t);
    Vec sum = half.x1;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += full.x1[i];
    total += payoff(traj.game.matrix, sum, full.x2);
  }
  return total;
}

std::pair<double, double> energy_delta_agent1(const GameInstance& game,
                                              const JointState& before_full,
                                              const JointState& after_half) {
  if (before_full.stage != Stage::Full || after_half.stage != Stage::Half) {
    throw ContractViolation("energy_delta_agent1: expected Full then Half");
  }
  double lhs =
      (norm_sq(after_half.x1) - norm_sq(before_full.x1)) / game.steps.eta1;
  Vec sum = after_half.x1;
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += before_full.x1[i];
  double rhs = payoff(game.matrix, sum, before_full.x2);
  return {lhs, rhs};
}

std::pair<double, double> energy_delta_agent2(const GameInstance& game,
                                              const JointState& half,
                                              const JointState& after_full) {
  if (half.stage != Stage::Half || after_full.stage != Stage::Full) {
    throw ContractViolation("energy_delta_agent2: expected Half then Full");
  }
  double lhs = (norm_sq(after_full.x2) - norm_sq(half.x2)) / game.steps.eta2;
  Vec sum = after_full.x2;
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += half.x2[i];
  double rhs = -payoff(game.matrix, after_full.x1, sum);
  return {lhs, rhs};
}

double regret_alt_summed(const Trajectory& traj, const Vec& x1_fixed) {
  if (!traj.has_half_states()) {
    throw ContractViolation("regret_alt_summed needs recorded Half states");
  }
  if (x1_fixed.size() != traj.game.k1()) {
    throw ContractViolation("regret_alt_summed: comparator has wrong length");
  }
  Vec grad_sum(traj.game.k1(), 0.0);
  for (std::size_t t = 0; t < traj.rounds(); ++t) {
    Vec g = mat_vec(traj.game.matrix, traj.full(t).x2);
    for (std::size_t i = 0; i < g.size(); ++i) grad_sum[i] += g[i];
  }
  return 2.0 * dot(x1_fixed, grad_sum) - cumulative_utility_alt(traj);
}

double regret_alt_closed_form(const GameInstance& game, const Vec& x1_fixed,
                              const Vec& x1_first, const Vec& x1_last) {
  auto bracket = [&](const Vec& y) {
    // <2x - y, y>
    return 2.0 * dot(x1_fixed, y) - dot(y, y);
  };
  return (bracket(x1_last) - bracket(x1_first)) / game.steps.eta1;
}

double regret_bound(const GameInstance& game, const Vec& x1_fixed,
                    const Vec& x1_first) {
  double first_term = dot(x1_first, x1_first) - 2.0 * dot(x1_fixed, x1_first);
  return (first_term + dot(x1_fixed, x1_fixed)) / game.steps.eta1;
}

double regret_sim_summed(const Trajectory& traj, const Vec& x1_fixed) {
  if (traj.mode != Mode::Sim) {
    throw ContractViolation("regret_sim_summed expects a Sim trajectory");
  }
  if (x1_fixed.size() != traj.game.k1()) {
    throw ContractViolation("regret_sim_summed: comparator has wrong length");
  }
  Vec grad_sum(traj.game.k1(), 0.0);
  for (const JointState& s : traj.states) {
    Vec g = mat_vec(traj.game.matrix, s.x2);
    for (std::size_t i = 0; i < g.size(); ++i) grad_sum[i] += g[i];
  }
  return dot(x1_fixed, grad_sum) - cumulative_utility_sim(traj);
}

RegretReport regret_report(const Trajectory& traj, const Vec& x1_fixed) {
  RegretReport report;
  report.fixed_strategy = x1_fixed;
  report.horizon = traj.rounds();
  report.summed_regret = regret_alt_summed(traj, x1_fixed);
  const Vec& first = traj.full(0).x1;
  const Vec& last =
      traj.rounds() == 0 ? first : traj.half(traj.rounds() - 1).x1;  // x1^{T+1}
  report.closed_form_regret =
      regret_alt_closed_form(traj.game, x1_fixed, first, last);
  report.bound = regret_bound(traj.game, x1_fixed, first);
  return report;
}

double perturbed_energy(const GameInstance& game, const JointState& s) {
  return norm_sq(s.x1) / game.steps.eta1 + norm_sq(s.x2) / game.steps.eta2 +
         payoff(game.matrix, s.x1, s.x2);
}

double weighted_energy(const GameInstance& game, const JointState& s) {
  return norm_sq(s.x1) / game.steps.eta1 + norm_sq(s.x2) / game.steps.eta2;
}

}  // namespace altgd
