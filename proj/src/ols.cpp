#include "collinear/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "collinear/distributions.hpp"
#include "collinear/error.hpp"
#include "collinear/linalg.hpp"

namespace collinear {

std::optional<std::size_t> FitResult::coefficient_index(std::size_t column) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == column) return i + slope_offset();
  return std::nullopt;
}

std::vector<std::size_t> all_columns(const Dataset& d) {
  std::vector<std::size_t> c(d.k());
  std::iota(c.begin(), c.end(), std::size_t{0});
  return c;
}

FitResult fit(const Dataset& d, const std::vector<std::size_t>& columns, bool intercept) {
  const std::size_t n = d.n();
  const std::size_t offset = intercept ? 1 : 0;
  const std::size_t p = columns.size() + offset;
  {
    std::set<std::size_t> unique(columns.begin(), columns.end());
    if (unique.size() != columns.size()) throw ValidationError("repeated column in fit");
    for (std::size_t c : columns)
      if (c >= d.k()) throw ColumnsMissing("column index " + std::to_string(c));
  }
  if (p == 0) throw ValidationError("fit needs at least one parameter");
  if (n <= p) throw InsufficientRows(n, p);

  Matrix design(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    if (intercept) design(i, 0) = 1.0;
    for (std::size_t j = 0; j < columns.size(); ++j) design(i, j + offset) = d.x()(i, columns[j]);
  }
  const Matrix xt = design.transpose();
  const Matrix xtx = xt * design;

  FitResult r;
  std::optional<CholeskyFactor> factor;
  try {
    factor.emplace(xtx);
  } catch (const NotPositiveDefinite& e) {
    throw SingularDesign("normal matrix is not positive definite at pivot " +
                         std::to_string(e.pivot()));
  }
  r.xtx_inverse = factor->solve(Matrix::identity(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < i; ++j)
      r.xtx_inverse(i, j) = r.xtx_inverse(j, i) = 0.5 * (r.xtx_inverse(i, j) + r.xtx_inverse(j, i));
  r.coefficients = factor->solve(xt * std::span<const double>(d.y()));
  {
    // One step of iterative refinement on the normal equations.
    const Vector fitted0 = design * std::span<const double>(r.coefficients);
    Vector res(n);
    for (std::size_t i = 0; i < n; ++i) res[i] = d.y()[i] - fitted0[i];
    const Vector delta = factor->solve(xt * std::span<const double>(res));
    for (std::size_t i = 0; i < p; ++i) r.coefficients[i] += delta[i];
  }
  r.has_intercept = intercept;
  r.columns = columns;
  for (std::size_t c : columns) r.column_ids.push_back(d.predictor_names()[c]);
  r.n_obs = n;
  r.df_residual = n - p;

  const Vector fitted = design * std::span<const double>(r.coefficients);
  r.residuals.resize(n);
  double ybar = 0.0;
  for (double v : d.y()) ybar += v;
  ybar /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.residuals[i] = d.y()[i] - fitted[i];
    r.rss += r.residuals[i] * r.residuals[i];
    r.tss += (d.y()[i] - ybar) * (d.y()[i] - ybar);
  }
  const double df = static_cast<double>(r.df_residual);
  const double sigma2 = r.rss / df;
  r.sigma_hat = std::sqrt(sigma2);
  r.coef_covariance = r.xtx_inverse;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) r.coef_covariance(i, j) *= sigma2;

  // Model degrees of freedom exclude the intercept. Without one, the
  // response is taken to be centered already and df_model = k.
  const double df_model = static_cast<double>(columns.size());
  if (r.tss > 0.0) {
    r.r2 = std::clamp(1.0 - r.rss / r.tss, 0.0, 1.0);
    r.adj_r2 = 1.0 - (1.0 - r.r2) * (static_cast<double>(n) - 1.0) / df;
  } else {
    r.r2 = 1.0;
    r.adj_r2 = 1.0;
  }
  if (df_model > 0.0) {
    const double ess = std::max(r.tss - r.rss, 0.0);
    if (r.rss > 0.0) {
      r.f_stat = (ess / df_model) / sigma2;
      r.f_p = f_upper_p(r.f_stat, df_model, df);
    } else {
      r.f_stat = std::numeric_limits<double>::infinity();
      r.f_p = 0.0;
    }
  }
  return r;
}

FitResult fit(const Dataset& d) { return fit(d, all_columns(d), true); }

std::vector<CoefTest> coef_tests(const FitResult& f) {
  if (f.df_residual < 1) throw ValidationError("coefficient tests need df_residual >= 1");
  std::vector<CoefTest> out;
  for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
    CoefTest t;
    t.name = (f.has_intercept && i == 0) ? "(Intercept)" : f.column_ids[i - f.slope_offset()];
    t.estimate = f.coefficients[i];
    t.se = std::sqrt(f.coef_covariance(i, i));
    if (t.estimate == 0.0) {
      t.t = 0.0;
      t.p = 1.0;
    } else {
      t.t = t.estimate / t.se;
      t.p = t_two_sided_p(t.t, static_cast<double>(f.df_residual));
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<double> vif(const Dataset& d, const std::vector<std::size_t>& columns) {
  std::vector<double> out;
  out.reserve(columns.size());
  for (std::size_t j : columns) {
    std::vector<std::size_t> others;
    for (std::size_t c : columns)
      if (c != j) others.push_back(c);
    if (others.empty()) {
      out.push_back(1.0);
      continue;
    }
    const Dataset aux(d.predictor_names(), d.x(), d.x().column(j), "__vif_target");
    const FitResult r = fit(aux, others, true);
    out.push_back(r.tss > 0.0 ? r.tss / r.rss : 1.0);
  }
  return out;
}

PartialFTest partial_f_test(const FitResult& full, const FitResult& reduced) {
  if (full.n_obs != reduced.n_obs) throw NotNested("fits use different row counts");
  if (full.has_intercept != reduced.has_intercept)
    throw NotNested("fits differ in intercept");
  for (std::size_t c : reduced.columns)
    if (std::find(full.columns.begin(), full.columns.end(), c) == full.columns.end())
      throw NotNested("reduced model column " + std::to_string(c) + " absent from full model");
  PartialFTest t;
  t.df1 = full.columns.size() - reduced.columns.size();
  t.df2 = full.df_residual;
  if (t.df1 == 0) return t;
  const double num = std::max(reduced.rss - full.rss, 0.0) / static_cast<double>(t.df1);
  const double den = full.rss / static_cast<double>(t.df2);
  if (den == 0.0) {
    t.f = num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    t.p = num > 0.0 ? 0.0 : 1.0;
    return t;
  }
  t.f = num / den;
  t.p = f_upper_p(t.f, static_cast<double>(t.df1), static_cast<double>(t.df2));
  return t;
}

}  // namespace collinear
