#include "altgd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "altgd/errors.hpp"

namespace altgd {

SquareMatrix::SquareMatrix(std::size_t n, Vec entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ < 1) {
    throw ContractViolation("square matrix must be at least 1x1");
  }
  if (entries_.size() != n_ * n_) {
    throw ContractViolation("square matrix entry count does not match n*n");
  }
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  Vec e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return SquareMatrix(n, std::move(e));
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& other) const {
  if (n_ != other.n_) {
    throw ContractViolation("square matrix product: size mismatch");
  }
  Vec out(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        out[i * n_ + j] += aik * other(k, j);
      }
    }
  }
  return SquareMatrix(n_, std::move(out));
}

Vec mat_vec(const PayoffMatrix& a, const Vec& v) {
  if (v.size() != a.cols()) {
    throw ContractViolation("mat_vec: vector length does not match cols");
  }
  Vec out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      acc += a(i, j) * v[j];
    }
    out[i] = acc;
  }
  return out;
}

Vec mat_tvec(const PayoffMatrix& a, const Vec& v) {
  if (v.size() != a.rows()) {
    throw ContractViolation("mat_tvec: vector length does not match rows");
  }
  Vec out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out[j] += a(i, j) * v[i];
    }
  }
  return out;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw ContractViolation("dot: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm_sq(const Vec& v) { return dot(v, v); }

namespace {

// One Rayleigh-quotient power sweep for A^T A starting from v;
// returns the converged estimate or throws after iter budget.
double power_iterate(const PayoffMatrix& a, Vec v, double tol,
                     std::size_t max_iter, double* out_estimate, Vec* out_v) {
  double norm = std::sqrt(norm_sq(v));
  for (double& x : v) x /= norm;
  double estimate = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    Vec w = mat_tvec(a, mat_vec(a, v));  // A^T A v
    double rayleigh = dot(v, w);
    double wn = std::sqrt(norm_sq(w));
    if (wn == 0.0) {
      // v is in the null space of A^T A; caller perturbs and retries.
      *out_estimate = 0.0;
      *out_v = v;
      return 0.0;
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] /= wn;
    bool converged =
        std::abs(rayleigh - estimate) < tol * std::max(1.0, std::abs(rayleigh));
    estimate = rayleigh;
    v = std::move(w);
    if (converged && it > 0) {
      *out_estimate = estimate;
      *out_v = v;
      return estimate;
    }
  }
  throw ConvergenceError(std::sqrt(std::max(0.0, estimate)),
                         "spectral_norm: power iteration did not converge");
}

}  // namespace

double spectral_norm(const PayoffMatrix& a, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) {
    throw ContractViolation("spectral_norm: tol must be positive");
  }
  Vec start(a.cols(), 1.0);
  double estimate = 0.0;
  Vec converged;
  power_iterate(a, start, tol, max_iter, &estimate, &converged);

  // Guard against a start vector orthogonal to the top singular space:
  // perturb the first coordinate and restart; keep the larger estimate.
  Vec perturbed = converged.empty() ? start : converged;
  perturbed[0] += 1e-3;
  double estimate2 = 0.0;
  Vec converged2;
  power_iterate(a, perturbed, tol, max_iter, &estimate2, &converged2);

  double top = std::max(estimate, estimate2);
  return std::sqrt(std::max(0.0, top));
}

double det(const SquareMatrix& m) {
  const std::size_t n = m.n();
  if (n > 64) {
    throw ContractViolation("det: matrix larger than the small-matrix regime");
  }
  Vec a = m.entries();
  double sign = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double cand = std::abs(a[r * n + col]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[pivot * n + j], a[col * n + j]);
      }
      sign = -sign;
    }
    double p = a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / p;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) {
        a[r * n + j] -= f * a[col * n + j];
      }
    }
  }
  double d = sign;
  for (std::size_t i = 0; i < n; ++i) d *= a[i * n + i];
  return d;
}

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

HullArea hull_area_2d(const std::vector<Point2>& points) {
  if (points.size() < 3) {
    return {0.0, true};
  }
  std::vector<Point2> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    return {0.0, true};
  }

  // Monotone chain.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    return {0.0, true};
  }

  // Shoelace.
  double twice_area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2& p = hull[i];
    const Point2& q = hull[(i + 1) % hull.size()];
    twice_area += p[0] * q[1] - q[0] * p[1];
  }
  return {std::abs(twice_area) / 2.0, false};
}

}  // namespace altgd
