#pragma once

#include <cstddef>
#include <vector>

#include "altgd/errors.hpp"

namespace altgd {

using Vec = std::vector<double>;

/// Dense real payoff matrix A of a two-agent bilinear zero-sum game.
/// Agent 1 receives <x1, A x2>, agent 2 its negation.
class PayoffMatrix {
 public:
  PayoffMatrix(std::size_t rows, std::size_t cols, Vec entries);
  explicit PayoffMatrix(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  const Vec& entries() const { return entries_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Vec entries_;  // row-major
};

/// Fixed learning rates (eta1, eta2), both strictly positive.
struct StepSizes {
  double eta1;
  double eta2;

  StepSizes(double e1, double e2);
};

enum class Stage { Full, Half };

/// Joint strategy pair at iteration t. Half marks the intermediate
/// state after agent 1's update, before agent 2 moves.
struct JointState {
  Vec x1;
  Vec x2;
  std::size_t t = 0;
  Stage stage = Stage::Full;
};

/// A game plus step sizes and an initial condition.
struct GameInstance {
  PayoffMatrix matrix;
  StepSizes steps;
  JointState initial;

  GameInstance(PayoffMatrix m, StepSizes s, JointState init);

  std::size_t k1() const { return matrix.rows(); }
  std::size_t k2() const { return matrix.cols(); }
};

/// <x1, A x2>. Agent 2's payoff is the negation.
double payoff(const PayoffMatrix& a, const Vec& x1, const Vec& x2);
double payoff(const GameInstance& game, const JointState& s);

void check_state_dims(const GameInstance& game, const JointState& s);

}  // namespace altgd
