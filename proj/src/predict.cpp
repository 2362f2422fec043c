#include "collinear/predict.hpp"

#include <algorithm>
#include <cmath>

#include "collinear/error.hpp"

namespace collinear {

Prediction predict(const FitResult& f, std::span<const double> x) {
  if (x.size() != f.columns.size())
    throw DimensionMismatch("point has " + std::to_string(x.size()) + " values, fit has " +
                            std::to_string(f.columns.size()) + " predictors");
  Vector plus(f.parameter_count());
  if (f.has_intercept) plus[0] = 1.0;
  std::copy(x.begin(), x.end(), plus.begin() + static_cast<std::ptrdiff_t>(f.slope_offset()));
  Prediction p;
  p.y_hat = dot(plus, f.coefficients);
  p.var_hat = std::max(quadratic_form(f.coef_covariance, plus), 0.0);
  return p;
}

Feasibility feasibility(const ScalingInfo& s, const GroupStructure& structure,
                        std::span<const double> x, double tolerance) {
  if (x.size() != structure.predictor_count())
    throw DimensionMismatch("point length does not match the group structure");
  Feasibility out;
  out.standardized = standardize_point(x, s);
  for (std::size_t j = 0; j < x.size(); ++j) out.standardized[j] *= structure.signs[j];
  out.extrapolation_flags.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    out.extrapolation_flags[j] = std::abs(out.standardized[j]) > 1.0;
    if (out.extrapolation_flags[j]) out.feasible = false;
  }
  for (std::size_t g = 0; g < structure.groups.size(); ++g) {
    const auto& members = structure.groups[g];
    if (members.size() < 2) continue;
    double lo = out.standardized[members.front()];
    double hi = lo;
    for (std::size_t j : members) {
      lo = std::min(lo, out.standardized[j]);
      hi = std::max(hi, out.standardized[j]);
    }
    out.per_group_spread.push_back({g, hi - lo});
    if (hi - lo > tolerance) out.feasible = false;
  }
  return out;
}

PredictionReport predict_with_report(const FitResult& f, const ScalingInfo& s,
                                     const GroupStructure& structure, std::span<const double> x,
                                     double tolerance) {
  return {predict(f, x), feasibility(s, structure, x, tolerance)};
}

}  // namespace collinear
