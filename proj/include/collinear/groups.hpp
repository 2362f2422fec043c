#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "collinear/dataset.hpp"
#include "collinear/matrix.hpp"
#include "collinear/ols.hpp"

namespace collinear {

inline constexpr double kDefaultGroupThreshold = 0.8;
inline constexpr double kDefaultEstimabilityThreshold = 1.0;

/// Partition of predictors into strongly correlated groups. signs[j] flips
/// predictor j so every pair inside a multi-member group correlates positively.
struct GroupStructure {
  std::vector<std::vector<std::size_t>> groups;  // members ascending, groups by first member
  std::vector<int> signs;                        // one per predictor
  double threshold_used = kDefaultGroupThreshold;
  std::vector<std::string> warnings;

  std::size_t predictor_count() const noexcept { return signs.size(); }
  /// Index of the group containing predictor j.
  std::size_t group_of(std::size_t j) const;
};

/// Every predictor in its own group with sign +1.
GroupStructure singleton_structure(std::size_t k);

/// Connected components of the graph |r_ij| >= threshold, each arranged by
/// apc_arrangement. Throws ApcInfeasible.
GroupStructure detect_groups(const Matrix& correlation,
                             double threshold = kDefaultGroupThreshold);

/// Signs for `group` (first member +1, member j gets sgn(r_1j)); checks every
/// sign-adjusted pair is positively correlated. Throws ApcInfeasible.
std::vector<int> apc_arrangement(const Matrix& correlation, const std::vector<std::size_t>& group);

/// A normalized linear combination sum_i w_i beta*_i over `members`, where
/// beta*_i is the coefficient of the sign-adjusted predictor.
struct GroupEffectSpec {
  std::string label;
  std::vector<std::size_t> members;
  Vector weights;
};

/// Validates sum |w_i| = 1 (within 1e-12) and sizes. Throws NormalizationError.
GroupEffectSpec make_effect(std::string label, std::vector<std::size_t> members, Vector weights);

/// w_i = s_i / sum_group s_j.
GroupEffectSpec variability_weights(const ScalingInfo& s, const std::vector<std::size_t>& members,
                                    std::string label = "vwa");
/// w_i = 1 / q.
GroupEffectSpec average_effect(const std::vector<std::size_t>& members, std::string label = "avg");

/// Moves delta of weight from the first member to the last, as in
/// (w1 - delta, ..., wq + delta). Throws NormalizationError if a weight
/// changes sign.
GroupEffectSpec perturb_effect(const GroupEffectSpec& spec, double delta, std::string label);

/// Coefficient vector c over the fit's parameters with c^T beta_hat = xi_hat.
/// Throws ColumnsMissing.
Vector effect_contrast(const FitResult& f, const GroupEffectSpec& spec,
                       const GroupStructure& structure);

struct EffectEstimate {
  double estimate = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 1.0;
  double null_value = 0.0;
  /// kappa = sum |w_i / s_i|; present when scaling was supplied.
  std::optional<double> kappa;
  /// Var(xi'_hat(w')) / sigma^2 in standardized coordinates.
  std::optional<double> variance_ratio;
  std::optional<bool> estimable;
};

EffectEstimate estimate_effect(const FitResult& f, const GroupEffectSpec& spec,
                               const GroupStructure& structure, double null_value = 0.0);

/// Also fills kappa, variance_ratio and estimable. The fit must include an
/// intercept and come from the dataset `scaling` describes.
EffectEstimate estimate_effect(const FitResult& f, const GroupEffectSpec& spec,
                               const GroupStructure& structure, const ScalingInfo& scaling,
                               double c_threshold = kDefaultEstimabilityThreshold,
                               double null_value = 0.0);

/// Estimability judged on the standardized (no-intercept) fit:
/// Var_hat(xi'_hat(w')) <= c_threshold * sigma_hat^2, with w' the spec's
/// weights re-expressed in standardized units and renormalized.
bool estimability(const FitResult& standardized_fit, const GroupEffectSpec& spec,
                  const GroupStructure& structure, const ScalingInfo& scaling,
                  double c_threshold = kDefaultEstimabilityThreshold);

/// The spec re-expressed over standardized predictors: w'_i = (w_i / s_i) / kappa.
GroupEffectSpec standardized_effect(const GroupEffectSpec& spec, const ScalingInfo& scaling);

}  // namespace collinear
