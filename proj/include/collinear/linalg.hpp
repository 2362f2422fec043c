#pragma once

#include "collinear/matrix.hpp"

namespace collinear {

/// Pivots below this fraction of the largest (equilibrated) diagonal are
/// treated as exact collinearity.
inline constexpr double kPivotTolerance = 1e-12;

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
/// The factorization is applied to the diagonally equilibrated matrix
/// D^{-1/2} A D^{-1/2}, and the scaling is kept alongside the factor.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const Matrix& a);

  std::size_t size() const noexcept { return lower_.rows(); }
  Matrix solve(const Matrix& b) const;
  Vector solve(std::span<const double> b) const;

 private:
  void solve_in_place(std::span<double> x) const;

  Matrix lower_;
  Vector scale_;  // 1/sqrt(a_ii)
};

/// Solves A X = B for symmetric positive definite A.
/// Throws NotPositiveDefinite when a pivot falls under kPivotTolerance.
Matrix solve_spd(const Matrix& a, const Matrix& b);
Matrix inverse_spd(const Matrix& a);

/// Sample Pearson correlation of the columns of x. Throws ZeroVariance.
Matrix correlation_matrix(const Matrix& x);

}  // namespace collinear
