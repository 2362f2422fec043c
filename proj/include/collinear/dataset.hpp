#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "collinear/matrix.hpp"

namespace collinear {

/// Response vector plus named predictor matrix (no intercept column).
/// Immutable after construction.
class Dataset {
 public:
  Dataset(std::vector<std::string> predictor_names, Matrix x, Vector y,
          std::string response_name = "y");

  std::size_t n() const noexcept { return x_.rows(); }
  std::size_t k() const noexcept { return x_.cols(); }

  const std::vector<std::string>& predictor_names() const noexcept { return names_; }
  const std::string& response_name() const noexcept { return response_name_; }
  const Matrix& x() const noexcept { return x_; }
  const Vector& y() const noexcept { return y_; }

  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws MissingColumn.
  std::size_t index_of(const std::string& name) const;

  /// Same data with new response values; used by replicate simulations.
  Dataset with_response(Vector y) const;

 private:
  std::vector<std::string> names_;
  Matrix x_;
  Vector y_;
  std::string response_name_;
};

/// Column means and centered column lengths s_i = sqrt(sum_j (x_ji - mean_i)^2).
struct ScalingInfo {
  Vector means;
  Vector scales;
  double response_mean = 0.0;
};

struct StandardizedData {
  Dataset data;
  ScalingInfo scaling;
};

/// Reads comma-separated numeric data with one header row. Predictors keep file
/// order; the response column is removed from them.
Dataset load_csv(const std::filesystem::path& path, const std::string& response_column);
Dataset parse_csv(std::istream& in, const std::string& response_column);

ScalingInfo scaling_of(const Dataset& d);

/// Centers and length-normalizes every predictor and centers the response.
/// The result is meant to be fit without an intercept. Throws ZeroVariance.
StandardizedData standardize(const Dataset& d);

/// Maps standardized-model slopes back to the original scale: intercept first,
/// then k slopes.
Vector back_transform(std::span<const double> std_coefs, const ScalingInfo& s);

Vector standardize_point(std::span<const double> x, const ScalingInfo& s);

}  // namespace collinear
