#include <doctest.h>

#include <cmath>

#include "altgd/dynamics.hpp"
#include "altgd/metrics.hpp"
#include "test_util.hpp"

using namespace altgd;
using testutil::Rng;
using testutil::scalar_game;

TEST_CASE("sim_gd_step hand examples") {
  GameInstance g = scalar_game(1.0, 0.5, 0.5, 60.0, 0.0);
  JointState s1 = sim_gd_step(g, g.initial);
  CHECK(s1.x1[0] == 60.0);
  CHECK(s1.x2[0] == -30.0);
  CHECK(s1.t == 1);

  JointState s2 = sim_gd_step(g, s1);
  CHECK(s2.x1[0] == 45.0);
  CHECK(s2.x2[0] == -60.0);

  GameInstance zero = scalar_game(1.0, 0.5, 0.5, 0.0, 0.0);
  JointState fixed = sim_gd_step(zero, zero.initial);
  CHECK(fixed.x1[0] == 0.0);
  CHECK(fixed.x2[0] == 0.0);
}

TEST_CASE("alt stages hand examples") {
  GameInstance g = scalar_game(1.0, 0.5, 0.5, 60.0, 0.0);

  JointState h = alt_gd_stage1(g, g.initial);
  CHECK(h.x1[0] == 60.0);
  CHECK(h.stage == Stage::Half);
  JointState f = alt_gd_stage2(g, h);
  CHECK(f.x2[0] == -30.0);
  CHECK(f.stage == Stage::Full);
  CHECK(f.t == 1);

  JointState h2 = alt_gd_stage1(g, f);
  CHECK(h2.x1[0] == 45.0);  // 60 + 0.5 * (-30)
  JointState f2 = alt_gd_stage2(g, h2);
  CHECK(f2.x2[0] == -52.5);  // -30 - 0.5 * 45

  GameInstance g35 = scalar_game(1.0, 0.5, 0.5, 35.0, 35.0);
  CHECK(alt_gd_stage1(g35, g35.initial).x1[0] == 52.5);

  // Zero x1 means zero gradient for agent 2.
  JointState half_zero{{0.0}, {7.0}, 0, Stage::Half};
  CHECK(alt_gd_stage2(g, half_zero).x2[0] == 7.0);

  CHECK_THROWS_AS(alt_gd_stage2(g, g.initial), ContractViolation);
  CHECK_THROWS_AS(alt_gd_stage1(g, half_zero), ContractViolation);
}

TEST_CASE("alt_gd_step is exactly stage2 after stage1") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    GameInstance g = testutil::random_safe_game(rng);
    JointState composed = alt_gd_stage2(g, alt_gd_stage1(g, g.initial));
    JointState stepped = alt_gd_step(g, g.initial);
    CHECK(composed.x1 == stepped.x1);  // bitwise
    CHECK(composed.x2 == stepped.x2);
  }
}

TEST_CASE("1-D alt step equals the explicit linear map") {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    double a = testutil::random_vec(rng, 1, -2.0, 2.0)[0];
    double eta = testutil::random_vec(rng, 1, 0.05, 0.9)[0];
    GameInstance g = scalar_game(a, eta, eta, 3.0, -2.0);
    JointState next = alt_gd_step(g, g.initial);
    double x1 = 3.0, x2 = -2.0;
    double m00 = 1.0, m01 = eta * a;
    double m10 = -eta * a, m11 = 1.0 - eta * eta * a * a;
    CHECK(testutil::rel_err(next.x1[0], m00 * x1 + m01 * x2) < 1e-12);
    CHECK(testutil::rel_err(next.x2[0], m10 * x1 + m11 * x2) < 1e-12);
  }
}

TEST_CASE("SimGD with A=[1], eta=1/2 grows the squared norm by 1.25 per step") {
  GameInstance g = scalar_game(1.0, 0.5, 0.5, 60.0, 0.0);
  JointState s = g.initial;
  for (int i = 0; i < 50; ++i) {
    double before = s.x1[0] * s.x1[0] + s.x2[0] * s.x2[0];
    s = sim_gd_step(g, s);
    double after = s.x1[0] * s.x1[0] + s.x2[0] * s.x2[0];
    CHECK(testutil::rel_err(after, 1.25 * before) < 1e-12);
  }
}

TEST_CASE("rollout records the expected states") {
  GameInstance g = scalar_game(1.0, 0.5, 0.5, 60.0, 0.0);
  Trajectory alt = rollout(g, Mode::Alt, 2);
  CHECK(alt.rounds() == 2);
  CHECK(alt.full(0).x1[0] == 60.0);
  CHECK(alt.full(1).x1[0] == 60.0);
  CHECK(alt.full(1).x2[0] == -30.0);
  CHECK(alt.full(2).x1[0] == 45.0);
  CHECK(alt.full(2).x2[0] == -52.5);
  CHECK(alt.half(0).stage == Stage::Half);

  Trajectory sim = rollout(g, Mode::Sim, 1);
  CHECK(sim.full(1).x1[0] == 60.0);
  CHECK(sim.full(1).x2[0] == -30.0);

  GameInstance zero = scalar_game(1.0, 0.5, 0.5, 0.0, 0.0);
  Trajectory still = rollout(zero, Mode::Alt, 100);
  for (std::size_t t = 0; t <= 100; ++t) {
    CHECK(still.full(t).x1[0] == 0.0);
    CHECK(still.full(t).x2[0] == 0.0);
  }
}

TEST_CASE("long SimGD runs hit the divergence guard with context") {
  GameInstance g = scalar_game(1.0, 0.5, 0.5, 60.0, 0.0);
  CHECK_THROWS_AS(rollout(g, Mode::Sim, 100000), DivergedError);
  try {
    rollout(g, Mode::Sim, 100000);
  } catch (const DivergedError& e) {
    CHECK(e.step() > 0);
  }
}

TEST_CASE("rollout_vs_opponent with stage2 reproduces rollout(Alt) exactly") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    GameInstance g = testutil::random_safe_game(rng);
    OpponentRule stage2 = [&g](std::size_t, const JointState& half) {
      return alt_gd_stage2(g, half).x2;
    };
    Trajectory a = rollout(g, Mode::Alt, 200);
    Trajectory b = rollout_vs_opponent(g, stage2, 200);
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t i = 0; i < a.states.size(); ++i) {
      CHECK(a.states[i].x1 == b.states[i].x1);  // bitwise
      CHECK(a.states[i].x2 == b.states[i].x2);
    }
  }
}

TEST_CASE("constant opponent gives the closed-form agent-1 path") {
  GameInstance g = scalar_game(1.0, 0.5, 0.5, 2.0, 0.0);
  Vec c{3.0};
  OpponentRule constant = [&c](std::size_t, const JointState&) { return c; };
  Trajectory traj = rollout_vs_opponent(g, constant, 50);
  // After the first round x2 = c, so x1^t = x1^1 + (t-1)*eta1*A*c.
  for (std::size_t t = 1; t <= 50; ++t) {
    double want = traj.full(1).x1[0] + (double(t) - 1.0) * 0.5 * 3.0;
    CHECK(testutil::rel_err(traj.full(t).x1[0], want) < 1e-12);
  }
}

TEST_CASE("zero opponent freezes agent 1 when x2^0 = 0") {
  GameInstance g = scalar_game(1.0, 0.5, 0.5, 4.0, 0.0);
  OpponentRule zero = [](std::size_t, const JointState&) { return Vec{0.0}; };
  Trajectory traj = rollout_vs_opponent(g, zero, 20);
  for (std::size_t t = 0; t <= 20; ++t) CHECK(traj.full(t).x1[0] == 4.0);
}

TEST_CASE("misbehaving opponents are rejected with the round index") {
  GameInstance g = scalar_game(1.0, 0.5, 0.5, 1.0, 1.0);
  OpponentRule wrong_len = [](std::size_t, const JointState&) {
    return Vec{1.0, 2.0};
  };
  CHECK_THROWS_AS(rollout_vs_opponent(g, wrong_len, 5), ContractViolation);
  OpponentRule non_finite = [](std::size_t, const JointState&) {
    return Vec{std::nan("")};
  };
  CHECK_THROWS_AS(rollout_vs_opponent(g, non_finite, 5), ContractViolation);
}

TEST_CASE("continuous reference stays at the equilibrium") {
  GameInstance g = scalar_game(1.0, 1.0, 1.0, 0.0, 0.0);
  Trajectory traj = continuous_reference(g, 1.0, 1e-2);
  for (const JointState& s : traj.states) {
    CHECK(s.x1[0] == 0.0);
    CHECK(s.x2[0] == 0.0);
  }
}

TEST_CASE("continuous reference traces the exact rotation") {
  // Exact solution of the 1-D flow is (cos t, -sin t) from (1, 0).
  GameInstance g = scalar_game(1.0, 1.0, 1.0, 1.0, 0.0);
  double t_end = 2.0 * std::acos(-1.0);
  Trajectory traj = continuous_reference(g, t_end, 1e-3);
  const JointState& last = traj.states.back();
  CHECK(std::abs(last.x1[0] - 1.0) < 1e-6);
  CHECK(std::abs(last.x2[0] - 0.0) < 1e-6);
}
