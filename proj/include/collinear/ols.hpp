#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "collinear/dataset.hpp"
#include "collinear/matrix.hpp"

namespace collinear {

/// Least squares fit of y on a subset of a dataset's predictors.
struct FitResult {
  Vector coefficients;     // intercept first when has_intercept
  Matrix coef_covariance;  // sigma_hat^2 (X^T X)^{-1}
  Matrix xtx_inverse;      // (X^T X)^{-1}, same layout as coefficients
  Vector residuals;
  double sigma_hat = 0.0;
  std::size_t df_residual = 0;
  double rss = 0.0;
  double tss = 0.0;  // centered total sum of squares
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;
  double f_p = 1.0;
  bool has_intercept = true;
  std::vector<std::size_t> columns;      // predictor indices into the dataset
  std::vector<std::string> column_ids;   // predictor names, parallel to columns
  std::size_t n_obs = 0;

  std::size_t parameter_count() const noexcept { return coefficients.size(); }
  /// Offset of predictor slopes within coefficients (1 with intercept).
  std::size_t slope_offset() const noexcept { return has_intercept ? 1 : 0; }
  /// Position of dataset predictor `column` in coefficients, if fitted.
  std::optional<std::size_t> coefficient_index(std::size_t column) const;
};

struct CoefTest {
  std::string name;
  double estimate = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 1.0;
};

struct PartialFTest {
  double f = 0.0;
  double p = 1.0;
  std::size_t df1 = 0;
  std::size_t df2 = 0;
};

/// Fits by the normal equations. Throws SingularDesign, InsufficientRows.
FitResult fit(const Dataset& d, const std::vector<std::size_t>& columns, bool intercept = true);
/// All predictors, with intercept.
FitResult fit(const Dataset& d);

std::vector<CoefTest> coef_tests(const FitResult& f);

/// VIF_j = 1 / (1 - R_j^2), regressing column j on the others plus intercept.
std::vector<double> vif(const Dataset& d, const std::vector<std::size_t>& columns);

/// F test for dropping full's extra columns. Throws NotNested.
PartialFTest partial_f_test(const FitResult& full, const FitResult& reduced);

std::vector<std::size_t> all_columns(const Dataset& d);

}  // namespace collinear
