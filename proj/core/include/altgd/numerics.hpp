#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "altgd/game.hpp"

namespace altgd {

/// Small dense square matrix (n <= 64), row-major.
class SquareMatrix {
 public:
  SquareMatrix(std::size_t n, Vec entries);
  static SquareMatrix identity(std::size_t n);

  std::size_t n() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  double& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Vec& entries() const { return entries_; }

  SquareMatrix operator*(const SquareMatrix& other) const;

 private:
  std::size_t n_;
  Vec entries_;
};

/// A v
Vec mat_vec(const PayoffMatrix& a, const Vec& v);
/// A^T v
Vec mat_tvec(const PayoffMatrix& a, const Vec& v);

double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& v);

/// Largest singular value via power iteration on A^T A. Deterministic:
/// starts from the normalized all-ones vector; if that start turns out
/// orthogonal to the top singular space, the first coordinate is
/// perturbed by 1e-3 and iteration restarts.
double spectral_norm(const PayoffMatrix& a, double tol = 1e-10,
                     std::size_t max_iter = 10000);

/// Determinant via partially pivoted elimination.
double det(const SquareMatrix& m);

struct HullArea {
  double area = 0.0;
  bool degenerate = false;  // fewer than 3 points or collinear
};

using Point2 = std::array<double, 2>;

/// Convex-hull area of a 2-D point set (monotone chain + shoelace).
HullArea hull_area_2d(const std::vector<Point2>& points);

}  // namespace altgd
