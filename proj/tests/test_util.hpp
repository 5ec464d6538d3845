#pragma once

#include <cmath>
#include <random>

#include "altgd/analysis.hpp"
#include "altgd/game.hpp"
#include "altgd/numerics.hpp"

namespace altgd::testutil {

using Rng = std::mt19937_64;

inline Vec random_vec(Rng& rng, std::size_t n, double lo = -1.0,
                      double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vec v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

inline PayoffMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  return PayoffMatrix(rows, cols, random_vec(rng, rows * cols));
}

/// Random game with dims <= max_dim, entries in [-1, 1], and step sizes
/// drawn inside the safety region sqrt(eta1*eta2) < 2/|A|.
inline GameInstance random_safe_game(Rng& rng, std::size_t max_dim = 5,
                                     double init_scale = 2.0) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::size_t k1 = dim(rng), k2 = dim(rng);
  PayoffMatrix a = random_matrix(rng, k1, k2);
  double cap = 2.0 / spectral_norm(a);
  std::uniform_real_distribution<double> eta(0.05 * cap, 0.9 * cap);
  StepSizes steps(eta(rng), eta(rng));
  JointState init{random_vec(rng, k1, -init_scale, init_scale),
                  random_vec(rng, k2, -init_scale, init_scale), 0, Stage::Full};
  return GameInstance(std::move(a), steps, std::move(init));
}

inline GameInstance scalar_game(double a, double eta1, double eta2, double x1,
                                double x2) {
  return GameInstance(PayoffMatrix(1, 1, {a}), StepSizes(eta1, eta2),
                      JointState{{x1}, {x2}, 0, Stage::Full});
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max({1.0, std::abs(got), std::abs(want)});
}

}  // namespace altgd::testutil
