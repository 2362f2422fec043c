#include "collinear/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "collinear/error.hpp"
#include "collinear/linalg.hpp"
#include "collinear/ols.hpp"
#include "collinear/selection.hpp"

namespace collinear {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double NormalStream::uniform() {
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::uint64_t NormalStream::below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

void validate(const SimConfig& cfg) {
  if (cfg.n <= 7) throw ValidationError("simulation needs n > 7");
  if (cfg.reps < 1) throw ValidationError("simulation needs reps >= 1");
  if (!(cfg.sigma >= 0.0)) throw ValidationError("sigma must be non-negative");
  if (cfg.beta.size() != 7) throw ValidationError("beta must hold an intercept and six slopes");
}

std::vector<std::string> default_names(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < k; ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

Matrix generate_design(const SimConfig& cfg) {
  validate(cfg);
  NormalStream rng(cfg.seed);
  std::vector<Vector> z(6, Vector(cfg.n));
  for (auto& col : z)
    for (double& v : col) v = rng.normal();
  Matrix x(cfg.n, 6);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    x(i, 0) = z[0][i];
    x(i, 1) = cfg.gamma * (cfg.w1 * z[0][i] + (1.0 - cfg.w1) * z[1][i]);
    x(i, 2) = z[2][i];
    x(i, 3) = cfg.gamma * (cfg.w2 * z[2][i] + (1.0 - cfg.w2) * z[3][i]);
    x(i, 4) = z[4][i];
    x(i, 5) = cfg.gamma * z[5][i];
  }
  return x;
}

Vector generate_response(const Matrix& x, std::span<const double> beta, double sigma,
                         std::uint64_t seed) {
  if (beta.size() != x.cols() + 1)
    throw DimensionMismatch("beta must have one entry per column plus an intercept");
  NormalStream rng(seed);
  Vector y(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double mean = beta[0];
    for (std::size_t j = 0; j < x.cols(); ++j) mean += x(i, j) * beta[j + 1];
    y[i] = mean + sigma * rng.normal();
  }
  return y;
}

std::pair<double, double> mean_and_variance(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, ss / static_cast<double>(values.size() - 1)};
}

double McEffectRow::mean_se() const {
  return reps == 0 ? 0.0 : std::sqrt(mc_var / static_cast<double>(reps));
}

std::vector<McEffectRow> monte_carlo_effects(const Matrix& x, const SimConfig& cfg,
                                             const std::vector<GroupEffectSpec>& specs,
                                             const GroupStructure& structure) {
  if (cfg.reps < 1) throw ValidationError("simulation needs reps >= 1");
  if (!(cfg.sigma >= 0.0)) throw ValidationError("sigma must be non-negative");
  const Dataset base(default_names(x.cols()), x, Vector(x.rows(), 0.0));
  const std::vector<std::size_t> cols = all_columns(base);

  std::vector<Vector> estimates(specs.size(), Vector(cfg.reps));
  std::vector<Vector> variances(specs.size(), Vector(cfg.reps));
  for (std::size_t r = 0; r < cfg.reps; ++r) {
    const Dataset d = base.with_response(
        generate_response(x, cfg.beta, cfg.sigma, derive_seed(cfg.seed, r)));
    const FitResult f = fit(d, cols, true);
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const EffectEstimate e = estimate_effect(f, specs[s], structure);
      estimates[s][r] = e.estimate;
      variances[s][r] = e.se * e.se;
    }
  }

  std::vector<McEffectRow> rows;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    McEffectRow row;
    row.label = specs[s].label;
    row.reps = cfg.reps;
    for (std::size_t m = 0; m < specs[s].members.size(); ++m) {
      const std::size_t j = specs[s].members[m];
      row.exact += specs[s].weights[m] * structure.signs.at(j) * cfg.beta.at(j + 1);
    }
    std::tie(row.mc_mean, row.mc_var) = mean_and_variance(estimates[s]);
    std::tie(row.mean_est_var, row.var_est_var) = mean_and_variance(variances[s]);
    rows.push_back(std::move(row));
  }
  return rows;
}

GroupStructure design_group_structure() {
  GroupStructure s;
  s.groups = {{0, 1}, {2, 3}, {4}, {5}};
  s.signs.assign(6, 1);
  return s;
}

std::vector<GroupEffectSpec> design_effect_specs(const ScalingInfo& s, double delta) {
  std::vector<GroupEffectSpec> specs;
  specs.push_back(variability_weights(s, {0, 1}, "xi1"));
  specs.push_back(variability_weights(s, {2, 3}, "xi2"));
  specs.push_back(make_effect("xi3", {0, 1}, {0.5, -0.5}));
  specs.push_back(make_effect("xi4", {4, 5}, {0.5, -0.5}));
  specs.push_back(average_effect({2, 3}, "xi5"));
  specs.push_back(perturb_effect(specs[1], delta, "xi6"));
  for (std::size_t j = 0; j < 6; ++j)
    specs.push_back(make_effect("beta" + std::to_string(j + 1), {j}, {1.0}));
  return specs;
}

// ---- ridge -------------------------------------------------------------------

Vector default_lambda_grid() {
  constexpr std::size_t kPoints = 50;
  Vector grid(kPoints);
  const double lo = std::log10(0.01), hi = std::log10(1000.0);
  for (std::size_t i = 0; i < kPoints; ++i)
    grid[i] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / (kPoints - 1));
  return grid;
}

Vector ridge_coefficients(const Dataset& d, double lambda) {
  if (!(lambda >= 0.0)) throw ValidationError("ridge lambda must be non-negative");
  const StandardizedData sd = standardize(d);
  const Matrix& xs = sd.data.x();
  const Matrix xt = xs.transpose();
  Matrix a = xt * xs;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += lambda;
  Vector b;
  try {
    b = CholeskyFactor(a).solve(xt * std::span<const double>(sd.data.y()));
  } catch (const NotPositiveDefinite&) {
    throw SingularDesign("ridge system is singular at lambda " + std::to_string(lambda));
  }
  return back_transform(b, sd.scaling);
}

std::vector<std::size_t> fold_assignment(std::size_t n, std::size_t folds, std::uint64_t seed) {
  if (folds < 2 || folds > n) throw ValidationError("folds must lie in [2, n]");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  NormalStream rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<std::size_t> fold_of(n);
  for (std::size_t pos = 0; pos < n; ++pos) fold_of[perm[pos]] = pos % folds;
  return fold_of;
}

double ridge_cv_error(const Dataset& d, double lambda, const std::vector<std::size_t>& fold_of,
                      std::size_t folds) {
  double sse = 0.0;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    for (std::size_t i = 0; i < d.n(); ++i) (fold_of[i] == f ? test : train).push_back(i);
    Matrix xtr(train.size(), d.k());
    Vector ytr(train.size());
    for (std::size_t r = 0; r < train.size(); ++r) {
      for (std::size_t j = 0; j < d.k(); ++j) xtr(r, j) = d.x()(train[r], j);
      ytr[r] = d.y()[train[r]];
    }
    const Vector b = ridge_coefficients(
        Dataset(d.predictor_names(), std::move(xtr), std::move(ytr), d.response_name()), lambda);
    for (std::size_t i : test) {
      double pred = b[0];
      for (std::size_t j = 0; j < d.k(); ++j) pred += b[j + 1] * d.x()(i, j);
      sse += (d.y()[i] - pred) * (d.y()[i] - pred);
    }
  }
  return sse / static_cast<double>(d.n());
}

RidgeResult ridge_fit(const Dataset& d, const Vector& lambda_grid, std::size_t folds,
                      std::uint64_t seed) {
  if (lambda_grid.empty()) throw ValidationError("empty lambda grid");
  for (double l : lambda_grid)
    if (!(l > 0.0)) throw ValidationError("lambda grid values must be positive");
  RidgeResult r;
  r.lambda_grid = lambda_grid;
  const auto fold_of = fold_assignment(d.n(), folds, seed);
  std::size_t best = 0;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    r.cv_error.push_back(ridge_cv_error(d, lambda_grid[i], fold_of, folds));
    if (r.cv_error[i] < r.cv_error[best]) best = i;
  }
  r.lambda = lambda_grid[best];
  r.coefficients = ridge_coefficients(d, r.lambda);
  return r;
}

// ---- comparison ------------------------------------------------------------------

std::vector<ComparisonRow> compare_predictors(const Matrix& x, const SimConfig& cfg,
                                              const std::vector<Vector>& points,
                                              const Vector& lambda_grid, std::size_t folds) {
  if (cfg.reps < 1) throw ValidationError("simulation needs reps >= 1");
  const Dataset base(default_names(x.cols()), x, Vector(x.rows(), 0.0));
  const std::vector<std::size_t> cols = all_columns(base);
  std::vector<ComparisonRow> rows(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (points[p].size() != x.cols()) throw DimensionMismatch("comparison point length");
    rows[p].point = points[p];
    rows[p].exact = cfg.beta[0] + dot(points[p], std::span(cfg.beta).subspan(1));
  }
  std::vector<Vector> ls(points.size(), Vector(cfg.reps));
  std::vector<Vector> ridge(points.size(), Vector(cfg.reps));
  std::vector<Vector> var_hat(points.size(), Vector(cfg.reps));
  for (std::size_t r = 0; r < cfg.reps; ++r) {
    const std::uint64_t rep_seed = derive_seed(cfg.seed, r);
    const Dataset d = base.with_response(generate_response(x, cfg.beta, cfg.sigma, rep_seed));
    const FitResult f = fit(d, cols, true);
    const RidgeResult rr = ridge_fit(d, lambda_grid, folds, derive_seed(rep_seed, 1));
    for (std::size_t p = 0; p < points.size(); ++p) {
      Vector plus(points[p].size() + 1, 1.0);
      std::copy(points[p].begin(), points[p].end(), plus.begin() + 1);
      ls[p][r] = dot(plus, f.coefficients);
      var_hat[p][r] = quadratic_form(f.coef_covariance, plus);
      ridge[p][r] = dot(plus, rr.coefficients);
    }
  }
  for (std::size_t p = 0; p < points.size(); ++p) {
    auto summarize = [&](const Vector& v, double& bias, double& mse) {
      double s = 0.0, s2 = 0.0;
      for (double e : v) {
        s += e - rows[p].exact;
        s2 += (e - rows[p].exact) * (e - rows[p].exact);
      }
      bias = s / static_cast<double>(cfg.reps);
      mse = s2 / static_cast<double>(cfg.reps);
    };
    summarize(ls[p], rows[p].ls_bias, rows[p].ls_mse);
    summarize(ridge[p], rows[p].ridge_bias, rows[p].ridge_mse);
    rows[p].ls_mean_var_hat = mean_and_variance(var_hat[p]).first;
  }
  return rows;
}

// ---- selection stability ------------------------------------------------------------

std::size_t SelectionStability::grouped_hits(const std::vector<std::size_t>& columns) const {
  const auto it = grouped_counts.find(columns);
  return it == grouped_counts.end() ? 0 : it->second;
}

std::size_t SelectionStability::singleton_hits(const std::vector<std::size_t>& columns) const {
  const auto it = singleton_counts.find(columns);
  return it == singleton_counts.end() ? 0 : it->second;
}

SelectionStability selection_stability(const Matrix& x, const SimConfig& cfg,
                                        const GroupStructure& structure) {
  if (cfg.reps < 1) throw ValidationError("simulation needs reps >= 1");
  const Dataset base(default_names(x.cols()), x, Vector(x.rows(), 0.0));
  const GroupStructure singles = singleton_structure(x.cols());
  SelectionStability out;
  out.reps = cfg.reps;
  out.grouped_candidates = enumerate_candidates(structure).size();
  out.singleton_candidates = enumerate_candidates(singles).size();
  for (std::size_t r = 0; r < cfg.reps; ++r) {
    const Dataset d = base.with_response(
        generate_response(x, cfg.beta, cfg.sigma, derive_seed(cfg.seed, r)));
    ++out.grouped_counts[all_subsets(d, structure).chosen.columns];
    ++out.singleton_counts[all_subsets(d, singles).chosen.columns];
  }
  return out;
}

}  // namespace collinear
