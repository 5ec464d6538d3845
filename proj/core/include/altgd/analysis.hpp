#pragma once

#include <cstddef>
#include <vector>

#include "altgd/dynamics.hpp"
#include "altgd/game.hpp"
#include "altgd/numerics.hpp"

namespace altgd {

/// Step-size safety margin and orbit-bound constants for a game.
struct BoundsCertificate {
  double norm_a = 0.0;         // spectral norm of A
  double safety_margin = 0.0;  // 2/|A| - sqrt(eta1*eta2)
  bool safe = false;           // margin strictly positive
  double upper_rhs = 0.0;      // <x1^0, A x2^0> + |x1^0|^2/eta1 + |x2^0|^2/eta2
  double lower_rhs = 0.0;      // (1 - c) * (|x1^0|^2/eta1 + |x2^0|^2/eta2)
  double cap_x1_sq = 0.0;      // per-agent bound on |x1^t|^2
  double cap_x2_sq = 0.0;      // per-agent bound on |x2^t|^2
};

enum class ConicClass { Ellipse, Parabola, Hyperbola };

/// Per-Full-state verdicts of the orbit bound checks.
struct OrbitCheckRecord {
  bool vacuous = false;  // unsafe step sizes, bounds carry no content
  std::vector<bool> upper_ok;
  std::vector<bool> lower_ok;
  std::vector<bool> caps_ok;
  bool all_passed = false;
};

/// Empirical near-returns of a trajectory to its initial state.
struct RecurrenceReport {
  double epsilon = 0.0;
  std::vector<std::size_t> return_times;
  double min_distance_seen = 0.0;  // over t >= 1
  std::size_t horizon = 0;
};

struct RotationAngle {
  double theta = 0.0;
  bool degenerate = false;  // |trace| >= 2, not an elliptic rotation
};

BoundsCertificate stepsize_safety(const GameInstance& game);

/// Classifies the 1-D orbit conic by the sign of a^2 - 4/(eta1*eta2).
ConicClass conic_classify_1d(double a, const StepSizes& steps);

OrbitCheckRecord check_orbit_bounds(const Trajectory& traj,
                                    const BoundsCertificate& cert);

/// Jacobian of one full alternating update, assembled as J2 * J1 with
/// J1 = [[I, eta1 A], [0, I]] and J2 = [[I, 0], [-eta2 A^T, I]].
SquareMatrix jacobian_altgd(const GameInstance& game);

/// Jacobian of one simultaneous update: [[I, eta1 A], [-eta2 A^T, I]].
SquareMatrix jacobian_simgd(const GameInstance& game);

SquareMatrix jacobian_stage1(const GameInstance& game);
SquareMatrix jacobian_stage2(const GameInstance& game);

/// Maps every cloud point (1-D per agent) through n_steps of the chosen
/// dynamic; returns hull areas indexed by step, entry 0 = initial cloud.
std::vector<double> volume_track(const GameInstance& game,
                                 const std::vector<Point2>& cloud, Mode mode,
                                 std::size_t n_steps);

/// Advances a 2-D cloud by one step of the chosen dynamic.
std::vector<Point2> advance_cloud(const GameInstance& game,
                                  const std::vector<Point2>& cloud, Mode mode);

RecurrenceReport recurrence_scan(const Trajectory& traj, double epsilon);

/// Rotation angle arccos(trace/2) of the 2x2 alternating-update map;
/// valid in the elliptic regime where det = 1 and |trace| < 2.
RotationAngle rotation_angle_2d(const GameInstance& game);

}  // namespace altgd
