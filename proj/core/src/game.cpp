#include "altgd/game.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace altgd {

namespace {

void require_finite(const Vec& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw ContractViolation(std::string(what) + " contains a non-finite entry");
    }
  }
}

}  // namespace

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols, Vec entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ < 1 || cols_ < 1) {
    throw ContractViolation("payoff matrix must be at least 1x1");
  }
  if (entries_.size() != rows_ * cols_) {
    throw ContractViolation("payoff matrix entry count does not match rows*cols");
  }
  require_finite(entries_, "payoff matrix");
}

PayoffMatrix::PayoffMatrix(const std::vector<Vec>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  if (rows_ < 1 || cols_ < 1) {
    throw ContractViolation("payoff matrix must be at least 1x1");
  }
  entries_.reserve(rows_ * cols_);
  for (const Vec& r : rows) {
    if (r.size() != cols_) {
      throw ContractViolation("ragged payoff matrix rows");
    }
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  require_finite(entries_, "payoff matrix");
}

StepSizes::StepSizes(double e1, double e2) : eta1(e1), eta2(e2) {
  if (!(eta1 > 0.0) || !(eta2 > 0.0)) {
    throw ContractViolation("step sizes must be strictly positive");
  }
}

GameInstance::GameInstance(PayoffMatrix m, StepSizes s, JointState init)
    : matrix(std::move(m)), steps(s), initial(std::move(init)) {
  if (initial.t != 0 || initial.stage != Stage::Full) {
    throw ContractViolation("initial state must be Full at t = 0");
  }
  check_state_dims(*this, initial);
}

void check_state_dims(const GameInstance& game, const JointState& s) {
  if (s.x1.size() != game.k1() || s.x2.size() != game.k2()) {
    throw ContractViolation("state dimensions do not match the payoff matrix");
  }
  require_finite(s.x1, "x1");
  require_finite(s.x2, "x2");
}

double payoff(const PayoffMatrix& a, const Vec& x1, const Vec& x2) {
  if (x1.size() != a.rows() || x2.size() != a.cols()) {
    throw ContractViolation("payoff: strategy dimensions do not match matrix");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      row += a(i, j) * x2[j];
    }
    total += x1[i] * row;
  }
  return total;
}

double payoff(const GameInstance& game, const JointState& s) {
  return payoff(game.matrix, s.x1, s.x2);
}

}  // namespace altgd
