#include "altgd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace altgd {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& tok, std::size_t line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "not a real number: '" + tok + "'");
  }
}

Vec parse_vector(const std::string& text, std::size_t line) {
  Vec out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw ConfigError(line, "empty vector component");
    out.push_back(parse_real(tok, line));
  }
  if (out.empty()) throw ConfigError(line, "empty vector");
  return out;
}

std::vector<Vec> parse_matrix(const std::string& text, std::size_t line) {
  std::vector<Vec> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    rows.push_back(parse_vector(trim(row), line));
  }
  if (rows.empty()) throw ConfigError(line, "empty matrix");
  return rows;
}

// Round-trip formatting: shortest decimal that restores the double.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GameInstance ExperimentConfig::to_game() const {
  PayoffMatrix a(matrix_rows);
  StepSizes steps(eta1, eta2);
  JointState init{x1_0, x2_0, 0, Stage::Full};
  return GameInstance(std::move(a), steps, std::move(init));
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  bool saw_matrix = false, saw_eta1 = false, saw_eta2 = false;
  bool saw_x1 = false, saw_x2 = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(lineno, "expected 'key = value'");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (value.empty()) throw ConfigError(lineno, "empty value for '" + key + "'");

    if (key == "matrix") {
      cfg.matrix_rows = parse_matrix(value, lineno);
      saw_matrix = true;
    } else if (key == "eta1") {
      cfg.eta1 = parse_real(value, lineno);
      saw_eta1 = true;
    } else if (key == "eta2") {
      cfg.eta2 = parse_real(value, lineno);
      saw_eta2 = true;
    } else if (key == "x1_0") {
      cfg.x1_0 = parse_vector(value, lineno);
      saw_x1 = true;
    } else if (key == "x2_0") {
      cfg.x2_0 = parse_vector(value, lineno);
      saw_x2 = true;
    } else if (key == "mode") {
      if (value == "alt") cfg.mode = Mode::Alt;
      else if (value == "sim") cfg.mode = Mode::Sim;
      else if (value == "continuous") cfg.mode = Mode::Continuous;
      else if (value == "alt_vs_opponent") cfg.mode = Mode::AltVsOpponent;
      else throw ConfigError(lineno, "unknown mode '" + value + "'");
    } else if (key == "opponent") {
      if (value == "stage2") cfg.opponent = OpponentKind::Stage2;
      else if (value == "constant") cfg.opponent = OpponentKind::Constant;
      else if (value == "zero") cfg.opponent = OpponentKind::Zero;
      else if (value == "scripted-file") cfg.opponent = OpponentKind::ScriptedFile;
      else throw ConfigError(lineno, "unknown opponent '" + value + "'");
    } else if (key == "opponent_constant") {
      cfg.opponent_constant = parse_vector(value, lineno);
    } else if (key == "opponent_file") {
      cfg.opponent_file = value;
    } else if (key == "iterations") {
      double v = parse_real(value, lineno);
      if (v < 0 || v != std::floor(v)) {
        throw ConfigError(lineno, "iterations must be a nonnegative integer");
      }
      cfg.iterations = static_cast<std::size_t>(v);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_real(value, lineno);
    } else if (key == "comparator") {
      cfg.comparator = parse_vector(value, lineno);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "h") {
      cfg.continuous_h = parse_real(value, lineno);
    } else {
      throw ConfigError(lineno, "unknown key '" + key + "'");
    }
  }
  if (!saw_matrix) throw ConfigError(lineno, "missing required key 'matrix'");
  if (!saw_eta1 || !saw_eta2) {
    throw ConfigError(lineno, "missing required keys 'eta1'/'eta2'");
  }
  if (!saw_x1 || !saw_x2) {
    throw ConfigError(lineno, "missing required keys 'x1_0'/'x2_0'");
  }
  if (cfg.comparator.empty()) cfg.comparator = Vec(cfg.x1_0.size(), 0.0);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(0, "cannot open config file " + path.string());
  }
  return parse_config(in);
}

OpponentRule scripted_opponent_from_file(const std::filesystem::path& path,
                                         std::size_t k2) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(0, "cannot open opponent script " + path.string());
  }
  auto lines = std::make_shared<std::vector<Vec>>();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    Vec v = parse_vector(stripped, lineno);
    if (v.size() != k2) {
      throw ConfigError(lineno, "scripted opponent vector has length " +
                                    std::to_string(v.size()) + ", expected " +
                                    std::to_string(k2));
    }
    lines->push_back(std::move(v));
  }
  return [lines](std::size_t t, const JointState&) -> Vec {
    if (t >= lines->size()) {
      throw ContractViolation("scripted opponent exhausted at round " +
                              std::to_string(t));
    }
    return (*lines)[t];
  };
}

OpponentRule make_opponent(const GameInstance& game,
                           const ExperimentConfig& config) {
  if (!config.opponent) {
    throw ConfigError(0, "mode alt_vs_opponent requires an 'opponent' key");
  }
  switch (*config.opponent) {
    case OpponentKind::Stage2: {
      GameInstance g = game;
      return [g](std::size_t, const JointState& half) {
        return alt_gd_stage2(g, half).x2;
      };
    }
    case OpponentKind::Constant: {
      Vec c = config.opponent_constant;
      if (c.size() != game.k2()) {
        throw ConfigError(0, "opponent_constant has wrong length");
      }
      return [c](std::size_t, const JointState&) { return c; };
    }
    case OpponentKind::Zero: {
      Vec z(game.k2(), 0.0);
      return [z](std::size_t, const JointState&) { return z; };
    }
    case OpponentKind::ScriptedFile:
      return scripted_opponent_from_file(config.opponent_file, game.k2());
  }
  throw ConfigError(0, "unreachable opponent kind");
}

Trajectory simulate(const ExperimentConfig& config) {
  GameInstance game = config.to_game();
  switch (config.mode) {
    case Mode::Alt:
    case Mode::Sim:
      return rollout(game, config.mode, config.iterations);
    case Mode::AltVsOpponent:
      return rollout_vs_opponent(game, make_opponent(game, config),
                                 config.iterations);
    case Mode::Continuous:
      return continuous_reference(
          game, static_cast<double>(config.iterations) * config.continuous_h,
          config.continuous_h);
  }
  throw ConfigError(0, "unreachable mode");
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const std::size_t k1 = traj.game.k1();
  const std::size_t k2 = traj.game.k2();
  out << "t,stage";
  for (std::size_t i = 0; i < k1; ++i) out << ",x1_" << i;
  for (std::size_t i = 0; i < k2; ++i) out << ",x2_" << i;
  out << "\n";
  for (const JointState& s : traj.states) {
    if (s.stage == Stage::Half) {
      out << fmt(static_cast<double>(s.t) + 0.5) << ",half";
    } else {
      out << s.t << ",full";
    }
    for (double v : s.x1) out << "," << fmt(v);
    for (double v : s.x2) out << "," << fmt(v);
    out << "\n";
  }
}

Trajectory read_trajectory_csv(const GameInstance& game, Mode mode,
                               std::istream& in) {
  Trajectory traj{game, mode, {}};
  std::string line;
  std::getline(in, line);  // header
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    std::stringstream ss(stripped);
    std::string tok;
    std::vector<std::string> cells;
    while (std::getline(ss, tok, ',')) cells.push_back(tok);
    if (cells.size() != 2 + game.k1() + game.k2()) {
      throw ConfigError(lineno, "trajectory row has wrong column count");
    }
    JointState s;
    double t = parse_real(cells[0], lineno);
    s.stage = cells[1] == "half" ? Stage::Half : Stage::Full;
    s.t = static_cast<std::size_t>(std::floor(t));
    s.x1.resize(game.k1());
    s.x2.resize(game.k2());
    for (std::size_t i = 0; i < game.k1(); ++i) {
      s.x1[i] = parse_real(cells[2 + i], lineno);
    }
    for (std::size_t i = 0; i < game.k2(); ++i) {
      s.x2[i] = parse_real(cells[2 + game.k1() + i], lineno);
    }
    traj.states.push_back(std::move(s));
  }
  return traj;
}

void write_metrics_csv(const Trajectory& traj, const Vec& comparator,
                       std::ostream& out) {
  const GameInstance& game = traj.game;
  out << "t,perturbed_energy,weighted_energy,cum_utility,regret_vs_comparator\n";
  const bool alt_style = traj.has_half_states();
  double cum = 0.0;
  Vec grad_sum(game.k1(), 0.0);
  for (std::size_t t = 0; t <= traj.rounds(); ++t) {
    const JointState& s = traj.full(t);
    double regret;
    if (alt_style) {
      // Sums run over completed rounds, i.e. rounds 0..t-1.
      regret = 2.0 * dot(comparator, grad_sum) - cum;
    } else {
      regret = dot(comparator, grad_sum) - cum;
    }
    out << t << "," << fmt(perturbed_energy(game, s)) << ","
        << fmt(weighted_energy(game, s)) << "," << fmt(cum) << ","
        << fmt(regret) << "\n";
    if (t < traj.rounds()) {
      if (alt_style) {
        const JointState& half = traj.half(t);
        Vec sum = half.x1;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += s.x1[i];
        cum += payoff(game.matrix, sum, s.x2);
      } else {
        cum += payoff(game, s);
      }
      Vec g = mat_vec(game.matrix, s.x2);
      for (std::size_t i = 0; i < g.size(); ++i) grad_sum[i] += g[i];
    }
  }
}

void write_svg_scatter(const std::vector<Point2>& points,
                       const std::string& title, std::ostream& out) {
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (!points.empty()) {
    min_x = max_x = points[0][0];
    min_y = max_y = points[0][1];
    for (const Point2& p : points) {
      min_x = std::min(min_x, p[0]);
      max_x = std::max(max_x, p[0]);
      min_y = std::min(min_y, p[1]);
      max_y = std::max(max_y, p[1]);
    }
  }
  double span_x = std::max(max_x - min_x, 1e-12);
  double span_y = std::max(max_y - min_y, 1e-12);
  const double w = 640, hgt = 640, margin = 40;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << hgt << "\">\n";
  out << "<text x=\"10\" y=\"20\">" << title << "</text>\n";
  for (const Point2& p : points) {
    double px = margin + (p[0] - min_x) / span_x * (w - 2 * margin);
    double py = hgt - margin - (p[1] - min_y) / span_y * (hgt - 2 * margin);
    out << "<circle cx=\"" << px << "\" cy=\"" << py
        << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  }
  out << "</svg>\n";
}

namespace {

std::filesystem::path write_file(const std::filesystem::path& dir,
                                 const std::string& name,
                                 const std::function<void(std::ostream&)>& fn) {
  std::filesystem::create_directories(dir);
  std::filesystem::path p = dir / name;
  std::ofstream out(p);
  fn(out);
  return p;
}

// Rolls out stepwise so that divergence still yields partial output.
Trajectory simulate_partial(const ExperimentConfig& config, bool* diverged,
                            std::size_t* diverged_step) {
  *diverged = false;
  try {
    return simulate(config);
  } catch (const DivergedError& e) {
    *diverged = true;
    *diverged_step = e.step();
  }
  // Re-run up to the step before divergence to recover the prefix.
  ExperimentConfig shorter = config;
  shorter.iterations = *diverged_step > 0 ? *diverged_step - 1 : 0;
  return simulate(shorter);
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
  RunResult result;
  bool diverged = false;
  std::size_t diverged_step = 0;
  Trajectory traj = simulate_partial(config, &diverged, &diverged_step);

  std::filesystem::path dir(config.output_dir);
  result.artifacts.push_back(write_file(
      dir, "trajectory.csv",
      [&](std::ostream& o) { write_trajectory_csv(traj, o); }));
  result.artifacts.push_back(write_file(
      dir, "metrics.csv",
      [&](std::ostream& o) { write_metrics_csv(traj, config.comparator, o); }));

  if (traj.mode == Mode::Alt) {
    GameInstance game = config.to_game();
    BoundsCertificate cert = stepsize_safety(game);
    OrbitCheckRecord orbit = check_orbit_bounds(traj, cert);
    double eps = config.epsilon.value_or(
        0.01 * std::sqrt(norm_sq(game.initial.x1) + norm_sq(game.initial.x2)));
    RecurrenceReport rec = recurrence_scan(traj, eps);
    result.artifacts.push_back(
        write_file(dir, "report.txt", [&](std::ostream& o) {
          o << "spectral_norm = " << fmt(cert.norm_a) << "\n"
            << "safety_margin = " << fmt(cert.safety_margin) << "\n"
            << "safe = " << (cert.safe ? "yes" : "no") << "\n"
            << "upper_rhs = " << fmt(cert.upper_rhs) << "\n"
            << "lower_rhs = " << fmt(cert.lower_rhs) << "\n"
            << "cap_x1_sq = " << fmt(cert.cap_x1_sq) << "\n"
            << "cap_x2_sq = " << fmt(cert.cap_x2_sq) << "\n"
            << "orbit_bounds = "
            << (orbit.vacuous ? "vacuous (unsafe step sizes)"
                              : (orbit.all_passed ? "pass" : "FAIL"))
            << "\n"
            << "recurrence_epsilon = " << fmt(rec.epsilon) << "\n"
            << "recurrence_returns = " << rec.return_times.size() << "\n"
            << "min_distance_seen = " << fmt(rec.min_distance_seen) << "\n";
        }));
  }

  if (diverged) {
    result.exit_code = kDiverged;
    result.message = "diverged at step " + std::to_string(diverged_step);
  }
  return result;
}

std::vector<Point2> cat_cloud() {
  // Cat silhouette centered at (18, 0): head disc, two ears, whisker dots.
  std::vector<Point2> pts;
  const double cx = 18.0, cy = 0.0, r = 5.0;
  const double pi = std::acos(-1.0);
  for (int i = 0; i < 24; ++i) {
    double th = 2.0 * pi * i / 24;
    pts.push_back({cx + r * std::cos(th), cy + r * std::sin(th)});
  }
  auto ear = [&](double th_center) {
    double t0 = th_center - 0.22, t1 = th_center + 0.22;
    pts.push_back({cx + r * std::cos(t0), cy + r * std::sin(t0)});
    pts.push_back({cx + 1.8 * r * std::cos(th_center),
                   cy + 1.8 * r * std::sin(th_center)});
    pts.push_back({cx + r * std::cos(t1), cy + r * std::sin(t1)});
  };
  ear(pi / 3.0);
  ear(2.0 * pi / 3.0);
  // Eyes and nose: interior points, do not affect the hull.
  pts.push_back({cx - 1.5, cy + 1.2});
  pts.push_back({cx + 1.5, cy + 1.2});
  pts.push_back({cx, cy - 0.5});
  return pts;
}

std::vector<Point2> read_cloud_csv(std::istream& in) {
  std::vector<Point2> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    // Skip a header row if present.
    if (stripped.find_first_not_of("0123456789+-.eE, \t") != std::string::npos) {
      continue;
    }
    Vec v = parse_vector(stripped, lineno);
    if (v.size() != 2) {
      throw ConfigError(lineno, "cloud point must have exactly 2 coordinates");
    }
    pts.push_back({v[0], v[1]});
  }
  return pts;
}

bool is_figure_preset(const std::string& name) {
  return name == "fig1" || name == "fig2a" || name == "fig2b" ||
         name == "fig3" || name == "fig4";
}

ExperimentConfig figure_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.matrix_rows = {{1.0}};
  cfg.mode = Mode::Alt;
  if (name == "fig1") {
    cfg.eta1 = cfg.eta2 = 0.5;
    cfg.x1_0 = {35.0};
    cfg.x2_0 = {35.0};
    cfg.iterations = 125;
  } else if (name == "fig2a") {
    cfg.eta1 = cfg.eta2 = 0.5;
    cfg.x1_0 = {60.0};
    cfg.x2_0 = {0.0};
    cfg.iterations = 50;
  } else if (name == "fig2b") {
    cfg.eta1 = 1.0;
    cfg.eta2 = 0.5;
    cfg.x1_0 = {60.0};
    cfg.x2_0 = {0.0};
    cfg.iterations = 50;
  } else if (name == "fig3") {
    cfg.eta1 = cfg.eta2 = 0.5;
    cfg.x1_0 = {40.0};
    cfg.x2_0 = {0.0};
    cfg.iterations = 10;
  } else if (name == "fig4") {
    cfg.eta1 = cfg.eta2 = 0.2;
    cfg.x1_0 = {18.0};  // cloud centroid; the cloud itself drives fig4
    cfg.x2_0 = {0.0};
    cfg.iterations = 24;
  } else {
    throw ConfigError(0, "unknown figure preset '" + name + "'");
  }
  cfg.comparator = Vec(cfg.x1_0.size(), 0.0);
  return cfg;
}

namespace {

std::vector<Point2> states_to_points(const Trajectory& traj) {
  std::vector<Point2> pts;
  for (const JointState& s : traj.states) {
    pts.push_back({s.x1[0], s.x2[0]});
  }
  return pts;
}

}  // namespace

RunResult run_figure(const std::string& name,
                     const std::filesystem::path& out_dir) {
  RunResult result;
  if (!is_figure_preset(name)) {
    result.exit_code = kConfigError;
    result.message = "unknown figure preset '" + name + "'";
    return result;
  }
  ExperimentConfig cfg = figure_config(name);

  if (name == "fig4") {
    GameInstance game = cfg.to_game();
    std::vector<Point2> cloud = cat_cloud();
    std::vector<double> areas_alt = volume_track(game, cloud, Mode::Alt, 24);
    std::vector<double> areas_sim = volume_track(game, cloud, Mode::Sim, 24);
    result.artifacts.push_back(
        write_file(out_dir, "fig4_areas.csv", [&](std::ostream& o) {
          o << "step,area_alt,area_sim\n";
          for (std::size_t s = 0; s < areas_alt.size(); ++s) {
            o << s << "," << fmt(areas_alt[s]) << "," << fmt(areas_sim[s])
              << "\n";
          }
        }));
    for (Mode mode : {Mode::Alt, Mode::Sim}) {
      std::vector<Point2> current = cloud;
      std::vector<Point2> snapshots;
      std::ostringstream rows;
      rows << "step,point,x1,x2\n";
      for (std::size_t step = 0; step <= 24; ++step) {
        if (step % 4 == 0) {
          for (std::size_t i = 0; i < current.size(); ++i) {
            rows << step << "," << i << "," << fmt(current[i][0]) << ","
                 << fmt(current[i][1]) << "\n";
            snapshots.push_back(current[i]);
          }
        }
        if (step < 24) current = advance_cloud(game, current, mode);
      }
      std::string tag = mode == Mode::Alt ? "alt" : "sim";
      result.artifacts.push_back(
          write_file(out_dir, "fig4_cloud_" + tag + ".csv",
                     [&](std::ostream& o) { o << rows.str(); }));
      result.artifacts.push_back(
          write_file(out_dir, "fig4_cloud_" + tag + ".svg", [&](std::ostream& o) {
            write_svg_scatter(snapshots, "fig4 cloud snapshots (" + tag + ")", o);
          }));
    }
    return result;
  }

  if (name == "fig3") {
    for (Mode mode : {Mode::Sim, Mode::Alt}) {
      ExperimentConfig sub = cfg;
      sub.mode = mode;
      Trajectory traj = simulate(sub);
      std::string tag = mode == Mode::Alt ? "alt" : "sim";
      result.artifacts.push_back(
          write_file(out_dir, "fig3_trajectory_" + tag + ".csv",
                     [&](std::ostream& o) { write_trajectory_csv(traj, o); }));
      result.artifacts.push_back(
          write_file(out_dir, "fig3_metrics_" + tag + ".csv",
                     [&](std::ostream& o) {
                       write_metrics_csv(traj, cfg.comparator, o);
                     }));
      result.artifacts.push_back(
          write_file(out_dir, "fig3_points_" + tag + ".svg", [&](std::ostream& o) {
            write_svg_scatter(states_to_points(traj), "fig3 (" + tag + ")", o);
          }));
    }
    return result;
  }

  // fig1, fig2a, fig2b: a single alternating run.
  Trajectory traj = simulate(cfg);
  result.artifacts.push_back(
      write_file(out_dir, name + "_trajectory.csv",
                 [&](std::ostream& o) { write_trajectory_csv(traj, o); }));
  result.artifacts.push_back(
      write_file(out_dir, name + "_points.svg", [&](std::ostream& o) {
        write_svg_scatter(states_to_points(traj), name, o);
      }));
  if (name == "fig1") {
    // Regret vs iteration against the zero comparator.
    result.artifacts.push_back(
        write_file(out_dir, "fig1_regret.csv", [&](std::ostream& o) {
          o << "T,summed_regret,closed_form_regret,bound\n";
          const GameInstance& game = traj.game;
          Vec zero(game.k1(), 0.0);
          double cum = 0.0;
          Vec grad_sum(game.k1(), 0.0);
          for (std::size_t t = 0; t < traj.rounds(); ++t) {
            const JointState& full = traj.full(t);
            const JointState& half = traj.half(t);
            Vec sum = half.x1;
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += full.x1[i];
            cum += payoff(game.matrix, sum, full.x2);
            Vec g = mat_vec(game.matrix, full.x2);
            for (std::size_t i = 0; i < g.size(); ++i) grad_sum[i] += g[i];
            double summed = 2.0 * dot(zero, grad_sum) - cum;
            double closed = regret_alt_closed_form(game, zero, traj.full(0).x1,
                                                   half.x1);
            double bound = regret_bound(game, zero, traj.full(0).x1);
            o << t << "," << fmt(summed) << "," << fmt(closed) << ","
              << fmt(bound) << "\n";
          }
        }));
  }
  return result;
}

}  // namespace altgd
