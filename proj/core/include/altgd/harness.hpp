#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "altgd/analysis.hpp"
#include "altgd/dynamics.hpp"
#include "altgd/game.hpp"
#include "altgd/metrics.hpp"

namespace altgd {

enum class OpponentKind { Stage2, Constant, Zero, ScriptedFile };

/// Declarative record driving one harness run. Parsed from a flat
/// key = value file: vectors comma-separated, matrix rows separated
/// by semicolons.
struct ExperimentConfig {
  std::vector<Vec> matrix_rows;
  double eta1 = 0.0;
  double eta2 = 0.0;
  Vec x1_0;
  Vec x2_0;
  Mode mode = Mode::Alt;
  std::optional<OpponentKind> opponent;
  Vec opponent_constant;
  std::string opponent_file;
  std::size_t iterations = 0;
  std::optional<double> epsilon;
  Vec comparator;  // fixed strategy for the regret column; default zero
  std::string output_dir = ".";
  double continuous_h = 1e-3;  // substep for continuous mode

  GameInstance to_game() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Exit codes shared by run() and the CLI.
enum ExitCode {
  kOk = 0,
  kConfigError = 2,
  kDiverged = 3,
  kInvariantFailure = 4,
};

struct RunResult {
  int exit_code = kOk;
  std::vector<std::filesystem::path> artifacts;
  std::string message;
};

/// Rollout + persistence: writes trajectory.csv and metrics.csv under
/// config.output_dir. Deterministic given the config.
RunResult run(const ExperimentConfig& config);

Trajectory simulate(const ExperimentConfig& config);

/// CSV persistence. Values are written with round-trip precision.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
Trajectory read_trajectory_csv(const GameInstance& game, Mode mode,
                               std::istream& in);
void write_metrics_csv(const Trajectory& traj, const Vec& comparator,
                       std::ostream& out);

/// Minimal scatter plot; no external plotting dependency.
void write_svg_scatter(const std::vector<Point2>& points,
                       const std::string& title, std::ostream& out);

/// Scripted opponent: one comma-separated x2 vector per line.
OpponentRule scripted_opponent_from_file(const std::filesystem::path& path,
                                         std::size_t k2);
OpponentRule make_opponent(const GameInstance& game,
                           const ExperimentConfig& config);

/// Built-in point cloud (a cat silhouette) for the volume experiments.
std::vector<Point2> cat_cloud();

std::vector<Point2> read_cloud_csv(std::istream& in);

/// Figure presets: fig1, fig2a, fig2b, fig3, fig4.
bool is_figure_preset(const std::string& name);
ExperimentConfig figure_config(const std::string& name);

/// Emits the CSV/SVG artifacts of one figure preset into out_dir.
RunResult run_figure(const std::string& name,
                     const std::filesystem::path& out_dir);

}  // namespace altgd
