#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "collinear/dataset.hpp"
#include "collinear/groups.hpp"
#include "collinear/matrix.hpp"

namespace collinear {

/// splitmix64 finalizer applied to seed + stream * golden-ratio increment.
/// Gives every replicate an independent, order-free seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Standard normal variates from a 64-bit Mersenne Twister via the
/// Box-Muller transform. Uniforms use the top 53 bits, shifted by half an
/// ulp so they lie strictly inside (0, 1). Unlike std::normal_distribution
/// the sequence is fixed across standard library implementations.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

struct SimConfig {
  std::size_t n = 12;
  double w1 = 0.7;
  double w2 = 0.8;
  double gamma = 2.0;
  Vector beta = {3, 0, 0, 1, 2, 0, 3};  // intercept, then six slopes
  double sigma = 1.0;
  std::uint64_t seed = 1;
  std::size_t reps = 1000;
};

void validate(const SimConfig& cfg);

/// x1=z1, x2=g(w1 z1+(1-w1) z2), x3=z3, x4=g(w2 z3+(1-w2) z4), x5=z5, x6=g z6.
Matrix generate_design(const SimConfig& cfg);

/// y = beta0 + X beta_{1:} + sigma * eps.
Vector generate_response(const Matrix& x, std::span<const double> beta, double sigma,
                         std::uint64_t seed);

/// Predictor names x1..xk for simulated designs.
std::vector<std::string> default_names(std::size_t k);

struct McEffectRow {
  std::string label;
  double exact = 0.0;  // the effect evaluated at the true coefficients
  double mc_mean = 0.0;
  double mc_var = 0.0;
  double mean_est_var = 0.0;
  double var_est_var = 0.0;
  std::size_t reps = 0;
  /// Standard error of mc_mean, sqrt(mc_var / reps).
  double mean_se() const;
};

/// Fits each replicate response on X (with intercept) and aggregates the
/// estimates and estimated variances of every spec. Replicate r uses
/// derive_seed(cfg.seed, r).
std::vector<McEffectRow> monte_carlo_effects(const Matrix& x, const SimConfig& cfg,
                                             const std::vector<GroupEffectSpec>& specs,
                                             const GroupStructure& structure);

/// Groups {x1,x2}, {x3,x4}, {x5}, {x6} with positive signs: the structure the
/// generator builds in by construction.
GroupStructure design_group_structure();

/// Six group effects followed by the six individual coefficients for the
/// two-pair simulation design (groups {x1,x2}, {x3,x4}, {x5,x6}).
std::vector<GroupEffectSpec> design_effect_specs(const ScalingInfo& s, double delta = 0.05);

/// Mean and sample variance (n - 1 divisor; 0 for a single value).
std::pair<double, double> mean_and_variance(std::span<const double> values);

// ---- ridge regression ----------------------------------------------------

/// 50 log-spaced values from 0.01 to 1000.
Vector default_lambda_grid();

/// Closed-form ridge in standardized coordinates, returned on the original
/// scale (intercept first). Throws SingularDesign.
Vector ridge_coefficients(const Dataset& d, double lambda);

/// Row -> fold map; a seeded permutation dealt round-robin.
std::vector<std::size_t> fold_assignment(std::size_t n, std::size_t folds, std::uint64_t seed);

/// Pooled mean squared prediction error over held-out rows.
double ridge_cv_error(const Dataset& d, double lambda, const std::vector<std::size_t>& fold_of,
                      std::size_t folds);

struct RidgeResult {
  Vector coefficients;
  double lambda = 0.0;
  Vector lambda_grid;
  Vector cv_error;
};

RidgeResult ridge_fit(const Dataset& d, const Vector& lambda_grid, std::size_t folds,
                      std::uint64_t seed);

// ---- predictor comparison --------------------------------------------------

struct ComparisonRow {
  Vector point;
  double exact = 0.0;
  double ls_bias = 0.0;
  double ls_mse = 0.0;
  double ls_mean_var_hat = 0.0;
  double ridge_bias = 0.0;
  double ridge_mse = 0.0;
};

std::vector<ComparisonRow> compare_predictors(const Matrix& x, const SimConfig& cfg,
                                              const std::vector<Vector>& points,
                                              const Vector& lambda_grid = default_lambda_grid(),
                                              std::size_t folds = 5);

// ---- selection stability -----------------------------------------------------

struct SelectionStability {
  std::size_t reps = 0;
  std::map<std::vector<std::size_t>, std::size_t> grouped_counts;
  std::map<std::vector<std::size_t>, std::size_t> singleton_counts;
  std::size_t grouped_candidates = 0;
  std::size_t singleton_candidates = 0;

  std::size_t grouped_hits(const std::vector<std::size_t>& columns) const;
  std::size_t singleton_hits(const std::vector<std::size_t>& columns) const;
};

/// Repeats grouped and ungrouped all-subsets selection over replicate
/// responses on a fixed design.
SelectionStability selection_stability(const Matrix& x, const SimConfig& cfg,
                                        const GroupStructure& structure);

}  // namespace collinear
