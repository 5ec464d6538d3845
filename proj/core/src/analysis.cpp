#include "altgd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "altgd/metrics.hpp"

namespace altgd {

BoundsCertificate stepsize_safety(const GameInstance& game) {
  BoundsCertificate cert;
  cert.norm_a = spectral_norm(game.matrix);
  double geo = std::sqrt(game.steps.eta1 * game.steps.eta2);
  cert.safety_margin = 2.0 / cert.norm_a - geo;
  // The boundary case makes the upper-bound coefficient vanish, so only
  // a strictly positive margin yields usable certificates.
  cert.safe = cert.safety_margin > 0.0;

  const JointState& init = game.initial;
  double e0 = norm_sq(init.x1) / game.steps.eta1 +
              norm_sq(init.x2) / game.steps.eta2;
  cert.upper_rhs = payoff(game, init) + e0;
  double c = geo * cert.norm_a / 2.0;
  cert.lower_rhs = (1.0 - c) * e0;
  double denom1 = 1.0 / game.steps.eta1 -
                  std::sqrt(game.steps.eta2 / game.steps.eta1) * cert.norm_a / 2.0;
  double denom2 = 1.0 / game.steps.eta2 -
                  std::sqrt(game.steps.eta1 / game.steps.eta2) * cert.norm_a / 2.0;
  cert.cap_x1_sq = cert.safe ? cert.upper_rhs / denom1 : 0.0;
  cert.cap_x2_sq = cert.safe ? cert.upper_rhs / denom2 : 0.0;
  return cert;
}

ConicClass conic_classify_1d(double a, const StepSizes& steps) {
  double disc = a * a - 4.0 / (steps.eta1 * steps.eta2);
  double scale = std::max({1.0, a * a, 4.0 / (steps.eta1 * steps.eta2)});
  if (std::abs(disc) <= 1e-12 * scale) return ConicClass::Parabola;
  return disc < 0.0 ? ConicClass::Ellipse : ConicClass::Hyperbola;
}

OrbitCheckRecord check_orbit_bounds(const Trajectory& traj,
                                    const BoundsCertificate& cert) {
  if (traj.mode != Mode::Alt) {
    throw ContractViolation("check_orbit_bounds expects an Alt trajectory");
  }
  OrbitCheckRecord record;
  if (!cert.safe) {
    record.vacuous = true;
    return record;
  }
  const GameInstance& game = traj.game;
  double c = std::sqrt(game.steps.eta1 * game.steps.eta2) * cert.norm_a / 2.0;
  std::size_t n = traj.rounds() + 1;
  record.upper_ok.reserve(n);
  record.lower_ok.reserve(n);
  record.caps_ok.reserve(n);
  bool all = true;
  // Allow for double-precision drift relative to the certified constants.
  double slack_u = 1e-9 * std::max(1.0, std::abs(cert.upper_rhs));
  double slack_l = 1e-9 * std::max(1.0, std::abs(cert.lower_rhs));
  for (std::size_t t = 0; t < n; ++t) {
    const JointState& s = traj.full(t);
    double e = weighted_energy(game, s);
    bool up = (1.0 - c) * e <= cert.upper_rhs + slack_u;
    bool lo = (1.0 + c) * e >= cert.lower_rhs - slack_l;
    bool caps = norm_sq(s.x1) <= cert.cap_x1_sq + slack_u &&
                norm_sq(s.x2) <= cert.cap_x2_sq + slack_u;
    record.upper_ok.push_back(up);
    record.lower_ok.push_back(lo);
    record.caps_ok.push_back(caps);
    all = all && up && lo && caps;
  }
  record.all_passed = all;
  return record;
}

namespace {

// Assembles [[TL, TR], [BL, BR]] with identity/zero blocks implied.
SquareMatrix block_jacobian(const GameInstance& game, double top_right_scale,
                            double bottom_left_scale) {
  std::size_t k1 = game.k1();
  std::size_t k2 = game.k2();
  std::size_t n = k1 + k2;
  Vec e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < k2; ++j) {
      e[i * n + (k1 + j)] = top_right_scale * game.matrix(i, j);
      e[(k1 + j) * n + i] = bottom_left_scale * game.matrix(i, j);
    }
  }
  return SquareMatrix(n, std::move(e));
}

}  // namespace

SquareMatrix jacobian_stage1(const GameInstance& game) {
  return block_jacobian(game, game.steps.eta1, 0.0);
}

SquareMatrix jacobian_stage2(const GameInstance& game) {
  return block_jacobian(game, 0.0, -game.steps.eta2);
}

SquareMatrix jacobian_altgd(const GameInstance& game) {
  return jacobian_stage2(game) * jacobian_stage1(game);
}

SquareMatrix jacobian_simgd(const GameInstance& game) {
  return block_jacobian(game, game.steps.eta1, -game.steps.eta2);
}

std::vector<Point2> advance_cloud(const GameInstance& game,
                                  const std::vector<Point2>& cloud, Mode mode) {
  if (game.k1() != 1 || game.k2() != 1) {
    throw ContractViolation("cloud tracking is restricted to 1-D per agent");
  }
  std::vector<Point2> out;
  out.reserve(cloud.size());
  for (const Point2& p : cloud) {
    JointState s{{p[0]}, {p[1]}, 0, Stage::Full};
    JointState next =
        mode == Mode::Alt ? alt_gd_step(game, s) : sim_gd_step(game, s);
    out.push_back({next.x1[0], next.x2[0]});
  }
  return out;
}

std::vector<double> volume_track(const GameInstance& game,
                                 const std::vector<Point2>& cloud, Mode mode,
                                 std::size_t n_steps) {
  if (mode != Mode::Alt && mode != Mode::Sim) {
    throw ContractViolation("volume_track supports Alt and Sim only");
  }
  std::vector<double> areas;
  areas.reserve(n_steps + 1);
  std::vector<Point2> current = cloud;
  areas.push_back(hull_area_2d(current).area);
  for (std::size_t step = 0; step < n_steps; ++step) {
    current = advance_cloud(game, current, mode);
    areas.push_back(hull_area_2d(current).area);
  }
  return areas;
}

RecurrenceReport recurrence_scan(const Trajectory& traj, double epsilon) {
  if (traj.mode != Mode::Alt) {
    throw ContractViolation("recurrence_scan expects an Alt trajectory");
  }
  if (!(epsilon > 0.0)) {
    throw ContractViolation("recurrence_scan: epsilon must be positive");
  }
  RecurrenceReport report;
  report.epsilon = epsilon;
  report.horizon = traj.rounds();
  report.min_distance_seen = std::numeric_limits<double>::infinity();
  const JointState& origin = traj.full(0);
  for (std::size_t t = 1; t <= traj.rounds(); ++t) {
    const JointState& s = traj.full(t);
    double d2 = 0.0;
    for (std::size_t i = 0; i < s.x1.size(); ++i) {
      double diff = s.x1[i] - origin.x1[i];
      d2 += diff * diff;
    }
    for (std::size_t i = 0; i < s.x2.size(); ++i) {
      double diff = s.x2[i] - origin.x2[i];
      d2 += diff * diff;
    }
    double d = std::sqrt(d2);
    report.min_distance_seen = std::min(report.min_distance_seen, d);
    if (d < epsilon) report.return_times.push_back(t);
  }
  return report;
}

RotationAngle rotation_angle_2d(const GameInstance& game) {
  if (game.k1() != 1 || game.k2() != 1) {
    throw ContractViolation("rotation_angle_2d needs a 1x1 payoff matrix");
  }
  SquareMatrix j = jacobian_altgd(game);
  double trace = j(0, 0) + j(1, 1);
  RotationAngle out;
  if (std::abs(trace) >= 2.0) {
    out.degenerate = true;
    out.theta = trace <= -2.0 ? std::acos(-1.0) : 0.0;
    return out;
  }
  out.theta = std::acos(trace / 2.0);
  return out;
}

}  // namespace altgd
