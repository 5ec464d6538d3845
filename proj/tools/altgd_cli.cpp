// Command-line driver for the alternating/simultaneous gradient
// descent-ascent experiment harness.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "altgd/analysis.hpp"
#include "altgd/dynamics.hpp"
#include "altgd/harness.hpp"
#include "altgd/metrics.hpp"

namespace {

using namespace altgd;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

int cmd_simulate(const std::vector<std::string>& configs, unsigned jobs) {
  std::atomic<int> worst{kOk};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      try {
        RunResult r = run(load_config(configs[i]));
        if (!r.message.empty()) {
          std::cerr << configs[i] << ": " << r.message << "\n";
        }
        for (const auto& p : r.artifacts) {
          std::cout << "wrote " << p.string() << "\n";
        }
        int code = r.exit_code;
        int cur = worst.load();
        while (code > cur && !worst.compare_exchange_weak(cur, code)) {}
      } catch (const ConfigError& e) {
        std::cerr << configs[i] << ": config error: " << e.what() << "\n";
        int cur = worst.load();
        while (kConfigError > cur &&
               !worst.compare_exchange_weak(cur, kConfigError)) {}
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, configs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return worst.load();
}

int cmd_regret(const std::string& config_path, const std::string& fixed_str) {
  ExperimentConfig cfg = load_config(config_path);
  if (cfg.mode != Mode::Alt && cfg.mode != Mode::AltVsOpponent) {
    std::cerr << "regret requires mode alt or alt_vs_opponent\n";
    return kConfigError;
  }
  Vec fixed = cfg.comparator;
  if (!fixed_str.empty()) {
    std::stringstream ss(fixed_str);
    fixed.clear();
    std::string tok;
    while (std::getline(ss, tok, ',')) fixed.push_back(std::stod(tok));
  }
  Trajectory traj = simulate(cfg);
  RegretReport report = regret_report(traj, fixed);
  std::cout << "horizon = " << report.horizon << "\n"
            << "summed_regret = " << fmt(report.summed_regret) << "\n"
            << "closed_form_regret = " << fmt(report.closed_form_regret) << "\n"
            << "bound = " << fmt(report.bound) << "\n";
  return kOk;
}

int cmd_invariants(const std::string& config_path) {
  ExperimentConfig cfg = load_config(config_path);
  if (cfg.mode != Mode::Alt && cfg.mode != Mode::AltVsOpponent) {
    std::cerr << "invariants requires mode alt or alt_vs_opponent\n";
    return kConfigError;
  }
  GameInstance game = cfg.to_game();
  Trajectory traj = simulate(cfg);
  double e0 = perturbed_energy(game, traj.full(0));
  double scale = std::max(1.0, std::abs(e0));
  double max_a1 = 0.0, max_a2 = 0.0, max_drift = 0.0;
  for (std::size_t t = 0; t < traj.rounds(); ++t) {
    auto [l1, r1] = energy_delta_agent1(game, traj.full(t), traj.half(t));
    max_a1 = std::max(max_a1, rel_err(l1, r1));
    if (traj.mode == Mode::Alt) {
      auto [l2, r2] = energy_delta_agent2(game, traj.half(t), traj.full(t + 1));
      max_a2 = std::max(max_a2, rel_err(l2, r2));
      max_drift = std::max(
          max_drift,
          std::abs(perturbed_energy(game, traj.full(t + 1)) - e0) / scale);
    }
  }
  std::cout << "max_agent1_residual = " << fmt(max_a1) << "\n"
            << "max_agent2_residual = " << fmt(max_a2) << "\n"
            << "max_perturbed_energy_drift = " << fmt(max_drift) << "\n";
  bool ok = max_a1 <= 1e-9 && max_a2 <= 1e-9 &&
            (traj.mode != Mode::Alt || max_drift <= 1e-6);
  if (!ok) {
    std::cerr << "invariant check FAILED\n";
    return kInvariantFailure;
  }
  std::cout << "invariants hold\n";
  return kOk;
}

int cmd_bounds(const std::string& config_path) {
  ExperimentConfig cfg = load_config(config_path);
  cfg.mode = Mode::Alt;
  GameInstance game = cfg.to_game();
  BoundsCertificate cert = stepsize_safety(game);
  std::cout << "spectral_norm = " << fmt(cert.norm_a) << "\n"
            << "safety_margin = " << fmt(cert.safety_margin) << "\n"
            << "safe = " << (cert.safe ? "yes" : "no") << "\n"
            << "upper_rhs = " << fmt(cert.upper_rhs) << "\n"
            << "lower_rhs = " << fmt(cert.lower_rhs) << "\n"
            << "cap_x1_sq = " << fmt(cert.cap_x1_sq) << "\n"
            << "cap_x2_sq = " << fmt(cert.cap_x2_sq) << "\n";
  Trajectory traj = simulate(cfg);
  OrbitCheckRecord rec = check_orbit_bounds(traj, cert);
  if (rec.vacuous) {
    std::cout << "orbit_bounds = vacuous (unsafe step sizes)\n";
    return kOk;
  }
  std::cout << "orbit_bounds = " << (rec.all_passed ? "pass" : "FAIL") << "\n";
  return rec.all_passed ? kOk : kInvariantFailure;
}

int cmd_recurrence(const std::string& config_path, double epsilon) {
  ExperimentConfig cfg = load_config(config_path);
  cfg.mode = Mode::Alt;
  Trajectory traj = simulate(cfg);
  double eps = epsilon;
  if (!(eps > 0.0)) {
    GameInstance game = cfg.to_game();
    eps = cfg.epsilon.value_or(
        0.01 * std::sqrt(norm_sq(game.initial.x1) + norm_sq(game.initial.x2)));
  }
  RecurrenceReport rep = recurrence_scan(traj, eps);
  std::cout << "epsilon = " << fmt(rep.epsilon) << "\n"
            << "horizon = " << rep.horizon << "\n"
            << "min_distance_seen = " << fmt(rep.min_distance_seen) << "\n"
            << "returns = " << rep.return_times.size() << "\n";
  for (std::size_t t : rep.return_times) std::cout << "return_at " << t << "\n";
  return kOk;
}

int cmd_volume(const std::string& config_path, const std::string& cloud_path) {
  ExperimentConfig cfg = load_config(config_path);
  GameInstance game = cfg.to_game();
  std::vector<Point2> cloud;
  if (cloud_path.empty()) {
    cloud = cat_cloud();
  } else {
    std::ifstream in(cloud_path);
    if (!in) {
      std::cerr << "cannot open cloud file " << cloud_path << "\n";
      return kConfigError;
    }
    cloud = read_cloud_csv(in);
  }
  Mode mode = cfg.mode == Mode::Sim ? Mode::Sim : Mode::Alt;
  std::vector<double> areas = volume_track(game, cloud, mode, cfg.iterations);
  std::cout << "step,hull_area\n";
  for (std::size_t s = 0; s < areas.size(); ++s) {
    std::cout << s << "," << fmt(areas[s]) << "\n";
  }
  return kOk;
}

int cmd_figures(const std::string& preset, const std::string& out_dir) {
  RunResult r = run_figure(preset, out_dir);
  if (r.exit_code != kOk) {
    std::cerr << r.message << "\n";
    return r.exit_code;
  }
  for (const auto& p : r.artifacts) std::cout << "wrote " << p.string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient descent-ascent dynamics in bilinear zero-sum games"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  unsigned jobs = 1;
  auto* sim = app.add_subcommand("simulate", "rollout + persistence");
  sim->add_option("config", configs, "config file(s)")->required();
  sim->add_option("-j,--jobs", jobs, "run configs concurrently");

  std::string config_path, fixed_str;
  auto* reg = app.add_subcommand("regret", "regret report vs a fixed strategy");
  reg->add_option("config", config_path, "config file")->required();
  reg->add_option("--fixed", fixed_str, "comma-separated comparator vector");

  std::string inv_config;
  auto* inv = app.add_subcommand("invariants", "per-step identity residuals");
  inv->add_option("config", inv_config, "config file")->required();

  std::string bounds_config;
  auto* bnd = app.add_subcommand("bounds", "safety certificate + orbit check");
  bnd->add_option("config", bounds_config, "config file")->required();

  std::string rec_config;
  double epsilon = 0.0;
  auto* rec = app.add_subcommand("recurrence", "near-return scan");
  rec->add_option("config", rec_config, "config file")->required();
  rec->add_option("--epsilon", epsilon, "return radius");

  std::string vol_config, cloud_path;
  auto* vol = app.add_subcommand("volume", "hull-area series of a point cloud");
  vol->add_option("config", vol_config, "config file")->required();
  vol->add_option("--cloud", cloud_path, "points file (x1,x2 per line)");

  std::string preset, fig_out = ".";
  auto* fig = app.add_subcommand("figures", "fig1|fig2a|fig2b|fig3|fig4 presets");
  fig->add_option("preset", preset, "preset name")->required();
  fig->add_option("--out", fig_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(configs, jobs);
    if (reg->parsed()) return cmd_regret(config_path, fixed_str);
    if (inv->parsed()) return cmd_invariants(inv_config);
    if (bnd->parsed()) return cmd_bounds(bounds_config);
    if (rec->parsed()) return cmd_recurrence(rec_config, epsilon);
    if (vol->parsed()) return cmd_volume(vol_config, cloud_path);
    if (fig->parsed()) return cmd_figures(preset, fig_out);
  } catch (const altgd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return altgd::kConfigError;
  } catch (const altgd::DivergedError& e) {
    std::cerr << e.what() << "\n";
    return altgd::kDiverged;
  } catch (const altgd::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return altgd::kConfigError;
  }
  return 0;
}
