#pragma once

#include <cstddef>
#include <vector>

#include "collinear/dataset.hpp"
#include "collinear/groups.hpp"
#include "collinear/ols.hpp"

namespace collinear {

inline constexpr double kDefaultFeasibilityTolerance = 0.1;

struct Prediction {
  double y_hat = 0.0;
  double var_hat = 0.0;
};

struct GroupSpread {
  std::size_t group = 0;
  double spread = 0.0;  // max pairwise |x'_i - x'_j| over sign-adjusted members
};

struct Feasibility {
  Vector standardized;  // sign-adjusted standardized coordinates
  std::vector<GroupSpread> per_group_spread;  // multi-member groups only
  std::vector<bool> extrapolation_flags;      // |x'_i| > 1
  bool feasible = true;
};

struct PredictionReport {
  Prediction prediction;
  Feasibility feasibility;
};

/// y_hat = x+ beta_hat and var_hat = sigma_hat^2 x+ (X^T X)^{-1} x+^T, where
/// x holds one value per fitted predictor. Throws DimensionMismatch.
Prediction predict(const FitResult& f, std::span<const double> x);

/// A point is feasible when each correlated group's sign-adjusted
/// standardized coordinates spread by at most `tolerance` and no coordinate
/// exceeds 1 in magnitude.
Feasibility feasibility(const ScalingInfo& s, const GroupStructure& structure,
                        std::span<const double> x,
                        double tolerance = kDefaultFeasibilityTolerance);

/// Both of the above for a fit over all predictors of the analysed dataset.
PredictionReport predict_with_report(const FitResult& f, const ScalingInfo& s,
                                     const GroupStructure& structure, std::span<const double> x,
                                     double tolerance = kDefaultFeasibilityTolerance);

}  // namespace collinear
