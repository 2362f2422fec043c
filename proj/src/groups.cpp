#include "collinear/groups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "collinear/distributions.hpp"
#include "collinear/error.hpp"

namespace collinear {

std::size_t GroupStructure::group_of(std::size_t j) const {
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (std::find(groups[g].begin(), groups[g].end(), j) != groups[g].end()) return g;
  throw ColumnsMissing("predictor " + std::to_string(j) + " is in no group");
}

GroupStructure singleton_structure(std::size_t k) {
  GroupStructure s;
  s.signs.assign(k, 1);
  for (std::size_t j = 0; j < k; ++j) s.groups.push_back({j});
  s.threshold_used = 1.0;
  return s;
}

std::vector<int> apc_arrangement(const Matrix& correlation, const std::vector<std::size_t>& group) {
  if (group.size() < 2) throw ValidationError("APC arrangement needs at least two members");
  const std::size_t first = group.front();
  std::vector<int> signs(group.size(), 1);
  for (std::size_t m = 1; m < group.size(); ++m)
    signs[m] = correlation(first, group[m]) < 0.0 ? -1 : 1;
  for (std::size_t a = 0; a < group.size(); ++a)
    for (std::size_t b = a + 1; b < group.size(); ++b)
      if (!(signs[a] * signs[b] * correlation(group[a], group[b]) > 0.0)) {
        std::ostringstream msg;
        msg << "predictors " << group[a] << " and " << group[b]
            << " stay non-positively correlated after sign adjustment";
        throw ApcInfeasible(msg.str());
      }
  return signs;
}

GroupStructure detect_groups(const Matrix& correlation, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw ValidationError("group threshold must lie in (0, 1)");
  if (correlation.rows() != correlation.cols())
    throw DimensionMismatch("correlation matrix is not square");
  const std::size_t k = correlation.rows();

  // Union-find over strong edges.
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (std::abs(correlation(i, j)) >= threshold) {
        const std::size_t a = root(i), b = root(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  GroupStructure s;
  s.threshold_used = threshold;
  s.signs.assign(k, 1);
  std::vector<std::size_t> slot(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t r = root(j);
    if (slot[r] == k) {
      slot[r] = s.groups.size();
      s.groups.emplace_back();
    }
    s.groups[slot[r]].push_back(j);
  }
  for (const auto& g : s.groups) {
    if (g.size() < 2) continue;
    const std::vector<int> signs = apc_arrangement(correlation, g);
    for (std::size_t m = 0; m < g.size(); ++m) s.signs[g[m]] = signs[m];
  }

  // Weak stand-in for "not strongly correlated with outside variables".
  const double warn_at = 0.8 * threshold;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (s.group_of(i) != s.group_of(j) && std::abs(correlation(i, j)) >= warn_at) {
        std::ostringstream msg;
        msg << "predictors " << i << " and " << j << " are in different groups but |r| = "
            << std::abs(correlation(i, j));
        s.warnings.push_back(msg.str());
      }
  return s;
}

GroupEffectSpec make_effect(std::string label, std::vector<std::size_t> members, Vector weights) {
  if (members.empty()) throw NormalizationError("effect '" + label + "' has no members");
  if (members.size() != weights.size())
    throw NormalizationError("effect '" + label + "' has " + std::to_string(weights.size()) +
                             " weights for " + std::to_string(members.size()) + " members");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw NormalizationError("effect '" + label + "' has non-finite weight");
    total += std::abs(w);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "effect '" << label << "' weights have sum |w| = " << total << ", expected 1";
    throw NormalizationError(msg.str());
  }
  return {std::move(label), std::move(members), std::move(weights)};
}

GroupEffectSpec variability_weights(const ScalingInfo& s, const std::vector<std::size_t>& members,
                                    std::string label) {
  double total = 0.0;
  for (std::size_t j : members) total += s.scales.at(j);
  Vector w;
  for (std::size_t j : members) w.push_back(s.scales[j] / total);
  // Renormalize against accumulated rounding in the division.
  double sum = 0.0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return make_effect(std::move(label), members, std::move(w));
}

GroupEffectSpec average_effect(const std::vector<std::size_t>& members, std::string label) {
  const double q = static_cast<double>(members.size());
  return make_effect(std::move(label), members, Vector(members.size(), 1.0 / q));
}

GroupEffectSpec perturb_effect(const GroupEffectSpec& spec, double delta, std::string label) {
  if (spec.weights.size() < 2) throw NormalizationError("perturbation needs two or more members");
  Vector w = spec.weights;
  w.front() -= delta;
  w.back() += delta;
  if (w.front() * spec.weights.front() < 0.0 || w.back() * spec.weights.back() < 0.0)
    throw NormalizationError("perturbation of '" + spec.label + "' flips a weight sign");
  return make_effect(std::move(label), spec.members, std::move(w));
}

Vector effect_contrast(const FitResult& f, const GroupEffectSpec& spec,
                       const GroupStructure& structure) {
  Vector c(f.parameter_count(), 0.0);
  for (std::size_t m = 0; m < spec.members.size(); ++m) {
    const std::size_t j = spec.members[m];
    const auto idx = f.coefficient_index(j);
    if (!idx) throw ColumnsMissing("effect '" + spec.label + "' uses predictor " +
                                   std::to_string(j) + " which is not in the fit");
    const int sign = j < structure.signs.size() ? structure.signs[j] : 1;
    c[*idx] += spec.weights[m] * sign;
  }
  return c;
}

EffectEstimate estimate_effect(const FitResult& f, const GroupEffectSpec& spec,
                               const GroupStructure& structure, double null_value) {
  const Vector c = effect_contrast(f, spec, structure);
  EffectEstimate e;
  e.null_value = null_value;
  e.estimate = dot(c, f.coefficients);
  e.se = std::sqrt(std::max(quadratic_form(f.coef_covariance, c), 0.0));
  const double diff = e.estimate - null_value;
  if (diff == 0.0) {
    e.t = 0.0;
    e.p = 1.0;
  } else if (e.se == 0.0) {
    e.t = std::copysign(std::numeric_limits<double>::infinity(), diff);
    e.p = 0.0;
  } else {
    e.t = diff / e.se;
    e.p = f.df_residual >= 1 ? t_two_sided_p(e.t, static_cast<double>(f.df_residual)) : 1.0;
  }
  return e;
}

EffectEstimate estimate_effect(const FitResult& f, const GroupEffectSpec& spec,
                               const GroupStructure& structure, const ScalingInfo& scaling,
                               double c_threshold, double null_value) {
  EffectEstimate e = estimate_effect(f, spec, structure, null_value);
  double kappa = 0.0;
  for (std::size_t m = 0; m < spec.members.size(); ++m)
    kappa += std::abs(spec.weights[m] / scaling.scales.at(spec.members[m]));
  e.kappa = kappa;
  if (f.has_intercept) {
    // With an intercept the slope block of (X^T X)^{-1} is D^{-1} R^{-1} D^{-1},
    // so the standardized ratio is c^T (X^T X)^{-1} c / kappa^2.
    const Vector c = effect_contrast(f, spec, structure);
    const double ratio = quadratic_form(f.xtx_inverse, c) / (kappa * kappa);
    e.variance_ratio = ratio;
    e.estimable = ratio <= c_threshold * (1.0 + 1e-12);
  }
  return e;
}

GroupEffectSpec standardized_effect(const GroupEffectSpec& spec, const ScalingInfo& scaling) {
  Vector w(spec.weights.size());
  double kappa = 0.0;
  for (std::size_t m = 0; m < spec.members.size(); ++m) {
    w[m] = spec.weights[m] / scaling.scales.at(spec.members[m]);
    kappa += std::abs(w[m]);
  }
  for (double& v : w) v /= kappa;
  double total = 0.0;
  for (double v : w) total += std::abs(v);
  for (double& v : w) v /= total;
  return make_effect(spec.label + "'", spec.members, std::move(w));
}

bool estimability(const FitResult& standardized_fit, const GroupEffectSpec& spec,
                  const GroupStructure& structure, const ScalingInfo& scaling,
                  double c_threshold) {
  const GroupEffectSpec prime = standardized_effect(spec, scaling);
  const Vector c = effect_contrast(standardized_fit, prime, structure);
  const double var = quadratic_form(standardized_fit.coef_covariance, c);
  const double sigma2 = standardized_fit.sigma_hat * standardized_fit.sigma_hat;
  if (sigma2 == 0.0) return quadratic_form(standardized_fit.xtx_inverse, c) <= c_threshold;
  return var <= c_threshold * sigma2 * (1.0 + 1e-12);
}

}  // namespace collinear
