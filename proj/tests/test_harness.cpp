#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "altgd/harness.hpp"
#include "altgd/metrics.hpp"
#include "test_util.hpp"

using namespace altgd;
namespace fs = std::filesystem;

namespace {

ExperimentConfig config_from_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("altgd_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const char* kFig1Config =
    "matrix = 1\n"
    "eta1 = 0.5\n"
    "eta2 = 0.5\n"
    "x1_0 = 35\n"
    "x2_0 = 35\n"
    "mode = alt\n"
    "iterations = 125\n";

}  // namespace

TEST_CASE("config parsing, happy path") {
  ExperimentConfig cfg = config_from_string(
      "# comment\n"
      "matrix = 1, 0; 0, 2\n"
      "eta1 = 0.25\n"
      "eta2 = 0.5\n"
      "x1_0 = 1, 2\n"
      "x2_0 = 3, 4\n"
      "mode = sim\n"
      "iterations = 7\n"
      "epsilon = 0.1\n"
      "comparator = 0, 1\n");
  CHECK(cfg.matrix_rows.size() == 2);
  CHECK(cfg.matrix_rows[1][1] == 2.0);
  CHECK(cfg.mode == Mode::Sim);
  CHECK(cfg.iterations == 7);
  CHECK(cfg.epsilon.value() == 0.1);
  GameInstance g = cfg.to_game();
  CHECK(g.k1() == 2);
  CHECK(g.k2() == 2);
}

TEST_CASE("config errors carry line numbers") {
  try {
    config_from_string("matrix = 1\neta1 = bogus\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }

  try {
    config_from_string("matrix = 1\nno_equals_here\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }

  CHECK_THROWS_AS(config_from_string("eta1 = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(config_from_string("matrix = 1\neta1 = 0.5\neta2 = 0.5\n"
                                     "x1_0 = 1\nx2_0 = 1\nmode = nope\n"),
                  ConfigError);
}

TEST_CASE("trajectory CSV round-trips and metrics recompute identically") {
  ExperimentConfig cfg = config_from_string(kFig1Config);
  Trajectory traj = simulate(cfg);

  std::ostringstream csv;
  write_trajectory_csv(traj, csv);
  std::istringstream back(csv.str());
  Trajectory again = read_trajectory_csv(cfg.to_game(), cfg.mode, back);

  REQUIRE(again.states.size() == traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    CHECK(again.states[i].x1 == traj.states[i].x1);  // bit-exact via %.17g
    CHECK(again.states[i].x2 == traj.states[i].x2);
    CHECK(again.states[i].stage == traj.states[i].stage);
  }

  std::ostringstream m1, m2;
  write_metrics_csv(traj, cfg.comparator, m1);
  write_metrics_csv(again, cfg.comparator, m2);
  CHECK(m1.str() == m2.str());
}

TEST_CASE("re-running a config reproduces outputs byte for byte") {
  ExperimentConfig cfg = config_from_string(kFig1Config);
  fs::path d1 = temp_dir("det1");
  fs::path d2 = temp_dir("det2");
  cfg.output_dir = d1.string();
  run(cfg);
  cfg.output_dir = d2.string();
  run(cfg);
  for (const char* name : {"trajectory.csv", "metrics.csv", "report.txt"}) {
    CHECK(slurp(d1 / name) == slurp(d2 / name));
  }
}

TEST_CASE("zero iterations yields a CSV with only the initial state") {
  ExperimentConfig cfg = config_from_string(kFig1Config);
  cfg.iterations = 0;
  Trajectory traj = simulate(cfg);
  std::ostringstream csv;
  write_trajectory_csv(traj, csv);
  std::istringstream lines(csv.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 2);  // header + initial state
}

TEST_CASE("divergent SimGD run exits 3 with partial outputs") {
  ExperimentConfig cfg = config_from_string(kFig1Config);
  cfg.mode = Mode::Sim;
  cfg.iterations = 100000;
  fs::path dir = temp_dir("diverge");
  cfg.output_dir = dir.string();
  RunResult r = run(cfg);
  CHECK(r.exit_code == kDiverged);
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(slurp(dir / "trajectory.csv").size() > 100);
}

TEST_CASE("scripted opponent enforces vector length with line number") {
  fs::path dir = temp_dir("script");
  fs::path script = dir / "opp.txt";
  {
    std::ofstream out(script);
    out << "1.0\n2.0\n3.0, 4.0\n";
  }
  try {
    scripted_opponent_from_file(script, 1);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }

  // A valid script drives the rollout and runs out loudly.
  {
    std::ofstream out(script);
    out << "1.0\n2.0\n";
  }
  OpponentRule opp = scripted_opponent_from_file(script, 1);
  GameInstance g = testutil::scalar_game(1.0, 0.5, 0.5, 1.0, 0.0);
  Trajectory traj = rollout_vs_opponent(g, opp, 2);
  CHECK(traj.full(1).x2[0] == 1.0);
  CHECK(traj.full(2).x2[0] == 2.0);
  CHECK_THROWS_AS(rollout_vs_opponent(g, opp, 3), ContractViolation);
}

TEST_CASE("alt_vs_opponent stage2 config matches plain alt to the last bit") {
  ExperimentConfig alt_cfg = config_from_string(kFig1Config);
  ExperimentConfig opp_cfg = config_from_string(
      std::string(kFig1Config) + "mode = alt_vs_opponent\nopponent = stage2\n");
  Trajectory a = simulate(alt_cfg);
  Trajectory b = simulate(opp_cfg);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    CHECK(a.states[i].x1 == b.states[i].x1);
    CHECK(a.states[i].x2 == b.states[i].x2);
  }
}

TEST_CASE("figure presets emit their artifacts") {
  for (const std::string name : {"fig1", "fig2a", "fig2b", "fig3", "fig4"}) {
    CHECK(is_figure_preset(name));
    fs::path dir = temp_dir("figs_" + name);
    RunResult r = run_figure(name, dir);
    CHECK(r.exit_code == kOk);
    CHECK(!r.artifacts.empty());
    for (const auto& p : r.artifacts) CHECK(fs::exists(p));
  }
  CHECK_FALSE(is_figure_preset("fig9"));
  CHECK(run_figure("fig9", temp_dir("figs_bad")).exit_code == kConfigError);
}

TEST_CASE("cat cloud is a usable non-degenerate 2-D set") {
  std::vector<Point2> cloud = cat_cloud();
  CHECK(cloud.size() >= 20);
  HullArea a = hull_area_2d(cloud);
  CHECK_FALSE(a.degenerate);
  CHECK(a.area > 50.0);
}
