#include "collinear/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "collinear/error.hpp"

namespace collinear {

namespace {

void require_symmetric(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("matrix is not square");
  const double scale = std::max(max_abs(a), 1.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-10 * scale)
        throw ValidationError("matrix is not symmetric");
}

}  // namespace

CholeskyFactor::CholeskyFactor(const Matrix& a) {
  require_symmetric(a);
  const std::size_t n = a.rows();
  scale_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a(i, i) > 0.0)) throw NotPositiveDefinite(i);
    scale_[i] = 1.0 / std::sqrt(a(i, i));
  }
  // After equilibration every diagonal entry is one, so the relative pivot
  // test compares directly against kPivotTolerance.
  lower_ = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = 1.0;
    for (std::size_t l = 0; l < j; ++l) d -= lower_(j, l) * lower_(j, l);
    if (!(d > kPivotTolerance)) throw NotPositiveDefinite(j);
    const double ljj = std::sqrt(d);
    lower_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j) * scale_[i] * scale_[j];
      for (std::size_t l = 0; l < j; ++l) s -= lower_(i, l) * lower_(j, l);
      lower_(i, j) = s / ljj;
    }
  }
}

void CholeskyFactor::solve_in_place(std::span<double> x) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) x[i] *= scale_[i];
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t l = 0; l < i; ++l) s -= lower_(i, l) * x[l];
    x[i] = s / lower_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t l = i + 1; l < n; ++l) s -= lower_(l, i) * x[l];
    x[i] = s / lower_(i, i);
  }
  for (std::size_t i = 0; i < n; ++i) x[i] *= scale_[i];
}

Vector CholeskyFactor::solve(std::span<const double> b) const {
  if (b.size() != size()) throw DimensionMismatch("right-hand side length");
  Vector x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

Matrix CholeskyFactor::solve(const Matrix& b) const {
  if (b.rows() != size()) throw DimensionMismatch("right-hand side rows");
  Matrix x(b.rows(), b.cols());
  Vector column(b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < b.rows(); ++i) column[i] = b(i, j);
    solve_in_place(column);
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = column[i];
  }
  return x;
}

Matrix solve_spd(const Matrix& a, const Matrix& b) { return CholeskyFactor(a).solve(b); }

Matrix inverse_spd(const Matrix& a) {
  Matrix inv = solve_spd(a, Matrix::identity(a.rows()));
  // Symmetrize away round-off so downstream quadratic forms see an exact
  // symmetric matrix.
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double m = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = inv(j, i) = m;
    }
  return inv;
}

Matrix correlation_matrix(const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t k = x.cols();
  std::vector<Vector> centered(k, Vector(n));
  Vector norms(k);
  for (std::size_t j = 0; j < k; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      centered[j][i] = x(i, j) - mean;
      ss += centered[j][i] * centered[j][i];
    }
    if (!(ss > 0.0)) throw ZeroVariance(j);
    norms[j] = std::sqrt(ss);
  }
  Matrix r(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    r(a, a) = 1.0;
    for (std::size_t b = 0; b < a; ++b) {
      const double c =
          std::clamp(dot(centered[a], centered[b]) / (norms[a] * norms[b]), -1.0, 1.0);
      r(a, b) = r(b, a) = c;
    }
  }
  return r;
}

}  // namespace collinear
