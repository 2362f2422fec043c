#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "collinear/error.hpp"
#include "collinear/fixtures.hpp"
#include "collinear/linalg.hpp"
#include "collinear/ols.hpp"
#include "collinear/predict.hpp"
#include "collinear/selection.hpp"
#include "collinear/simulate.hpp"

namespace py = pybind11;
using namespace collinear;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix to_matrix(const Rows& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged rows: row " + std::to_string(i));
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Rows to_rows(const Matrix& m) {
  Rows out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

// Model -> count as a list of (columns, count) pairs; lists are unhashable.
std::vector<std::pair<std::vector<std::size_t>, std::size_t>> counts(
    const std::map<std::vector<std::size_t>, std::size_t>& m) {
  return {m.begin(), m.end()};
}

}  // namespace

PYBIND11_MODULE(_collinear, m) {
  m.doc() = "Group-based least squares regression for strongly correlated predictors";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const char* kind = e.kind() == ErrorKind::Input       ? "input"
                         : e.kind() == ErrorKind::Numerical ? "numerical"
                                                            : "validation";
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("kind") = kind;
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](std::vector<std::string> names, const Rows& x, Vector y, std::string response) {
             return Dataset(std::move(names), to_matrix(x), std::move(y), std::move(response));
           }),
           py::arg("names"), py::arg("x"), py::arg("y"), py::arg("response_name") = "y")
      .def_property_readonly("n", &Dataset::n)
      .def_property_readonly("k", &Dataset::k)
      .def_property_readonly("names", &Dataset::predictor_names)
      .def_property_readonly("response_name", &Dataset::response_name)
      .def_property_readonly("x", [](const Dataset& d) { return to_rows(d.x()); })
      .def_property_readonly("y", &Dataset::y)
      .def("index_of", &Dataset::index_of);

  m.def("load_csv", [](const std::string& path, const std::string& response) { return load_csv(path, response); },
        py::arg("path"), py::arg("response") = "y");

  py::class_<ScalingInfo>(m, "ScalingInfo")
      .def_readonly("means", &ScalingInfo::means)
      .def_readonly("scales", &ScalingInfo::scales)
      .def_readonly("response_mean", &ScalingInfo::response_mean);
  m.def("scaling_of", &scaling_of);

  auto fx = m.def_submodule("fixtures", "Embedded datasets");
  fx.def("hald_augmented", &fixtures::hald_augmented);
  fx.def("hald_renamed", &fixtures::hald_renamed);
  fx.def("sim_xd", &fixtures::sim_xd, py::arg("seed") = 1);
  fx.def("sim_design", [] { return to_rows(fixtures::sim_design()); });
  fx.def("hald_prediction_points", &fixtures::hald_prediction_points);
  fx.def("sim_prediction_points", &fixtures::sim_prediction_points);

  m.def("correlation_matrix", [](const Rows& x) { return to_rows(correlation_matrix(to_matrix(x))); });

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("coefficients", &FitResult::coefficients)
      .def_property_readonly("coef_covariance", [](const FitResult& f) { return to_rows(f.coef_covariance); })
      .def_property_readonly("xtx_inverse", [](const FitResult& f) { return to_rows(f.xtx_inverse); })
      .def_readonly("residuals", &FitResult::residuals)
      .def_readonly("sigma_hat", &FitResult::sigma_hat)
      .def_readonly("df_residual", &FitResult::df_residual)
      .def_readonly("rss", &FitResult::rss)
      .def_readonly("tss", &FitResult::tss)
      .def_readonly("r2", &FitResult::r2)
      .def_readonly("adj_r2", &FitResult::adj_r2)
      .def_readonly("f_stat", &FitResult::f_stat)
      .def_readonly("f_p", &FitResult::f_p)
      .def_readonly("has_intercept", &FitResult::has_intercept)
      .def_readonly("columns", &FitResult::columns)
      .def_readonly("column_ids", &FitResult::column_ids);

  py::class_<CoefTest>(m, "CoefTest")
      .def_readonly("name", &CoefTest::name)
      .def_readonly("estimate", &CoefTest::estimate)
      .def_readonly("se", &CoefTest::se)
      .def_readonly("t", &CoefTest::t)
      .def_readonly("p", &CoefTest::p);
  py::class_<PartialFTest>(m, "PartialFTest")
      .def_readonly("f", &PartialFTest::f)
      .def_readonly("p", &PartialFTest::p)
      .def_readonly("df1", &PartialFTest::df1)
      .def_readonly("df2", &PartialFTest::df2);

  m.def(
      "fit",
      [](const Dataset& d, std::optional<std::vector<std::size_t>> columns, bool intercept) {
        return fit(d, columns ? *columns : all_columns(d), intercept);
      },
      py::arg("data"), py::arg("columns") = py::none(), py::arg("intercept") = true);
  m.def("coef_tests", &coef_tests);
  m.def(
      "vif",
      [](const Dataset& d, std::optional<std::vector<std::size_t>> columns) {
        return vif(d, columns ? *columns : all_columns(d));
      },
      py::arg("data"), py::arg("columns") = py::none());
  m.def("partial_f_test", &partial_f_test, py::arg("full"), py::arg("reduced"));

  py::class_<GroupStructure>(m, "GroupStructure")
      .def_readonly("groups", &GroupStructure::groups)
      .def_readonly("signs", &GroupStructure::signs)
      .def_readonly("threshold_used", &GroupStructure::threshold_used)
      .def_readonly("warnings", &GroupStructure::warnings)
      .def("group_of", &GroupStructure::group_of);
  m.def(
      "detect_groups", [](const Rows& r, double t) { return detect_groups(to_matrix(r), t); },
      py::arg("correlation"), py::arg("threshold") = kDefaultGroupThreshold);
  m.def("singleton_structure", &singleton_structure);

  py::class_<GroupEffectSpec>(m, "GroupEffectSpec")
      .def_readonly("label", &GroupEffectSpec::label)
      .def_readonly("members", &GroupEffectSpec::members)
      .def_readonly("weights", &GroupEffectSpec::weights);
  m.def("make_effect", &make_effect, py::arg("label"), py::arg("members"), py::arg("weights"));
  m.def("variability_weights", &variability_weights, py::arg("scaling"), py::arg("members"),
        py::arg("label") = "vwa");
  m.def("average_effect", &average_effect, py::arg("members"), py::arg("label") = "avg");
  m.def("perturb_effect", &perturb_effect, py::arg("spec"), py::arg("delta"), py::arg("label"));

  py::class_<EffectEstimate>(m, "EffectEstimate")
      .def_readonly("estimate", &EffectEstimate::estimate)
      .def_readonly("se", &EffectEstimate::se)
      .def_readonly("t", &EffectEstimate::t)
      .def_readonly("p", &EffectEstimate::p)
      .def_readonly("kappa", &EffectEstimate::kappa)
      .def_readonly("variance_ratio", &EffectEstimate::variance_ratio)
      .def_readonly("estimable", &EffectEstimate::estimable);
  m.def(
      "estimate_effect",
      [](const FitResult& f, const GroupEffectSpec& spec, const GroupStructure& g,
         std::optional<ScalingInfo> scaling, double c_threshold) {
        return scaling ? estimate_effect(f, spec, g, *scaling, c_threshold) : estimate_effect(f, spec, g);
      },
      py::arg("fit"), py::arg("spec"), py::arg("structure"), py::arg("scaling") = py::none(),
      py::arg("c_threshold") = kDefaultEstimabilityThreshold);

  py::class_<CandidateModel>(m, "CandidateModel")
      .def_readonly("included_groups", &CandidateModel::included_groups)
      .def_readonly("columns", &CandidateModel::columns)
      .def_readonly("adj_r2", &CandidateModel::adj_r2);
  py::class_<EliminationStep>(m, "EliminationStep")
      .def_readonly("group", &EliminationStep::group)
      .def_readonly("columns", &EliminationStep::columns)
      .def_readonly("f", &EliminationStep::f)
      .def_readonly("p", &EliminationStep::p);
  py::class_<SelectionReport>(m, "SelectionReport")
      .def_readonly("ranked", &SelectionReport::ranked)
      .def_readonly("chosen", &SelectionReport::chosen)
      .def_readonly("trace", &SelectionReport::trace)
      .def_property_readonly("skipped", [](const SelectionReport& r) {
        std::vector<std::pair<std::vector<std::size_t>, std::string>> out;
        for (const auto& s : r.skipped) out.emplace_back(s.model.columns, s.reason);
        return out;
      });
  m.def("all_subsets", &all_subsets, py::arg("data"), py::arg("structure"));
  m.def("backward", &backward, py::arg("data"), py::arg("structure"), py::arg("p_rej") = 0.1);

  py::class_<Prediction>(m, "Prediction")
      .def_readonly("y_hat", &Prediction::y_hat)
      .def_readonly("var_hat", &Prediction::var_hat);
  py::class_<Feasibility>(m, "Feasibility")
      .def_readonly("standardized", &Feasibility::standardized)
      .def_property_readonly("spreads",
                             [](const Feasibility& f) {
                               std::vector<std::pair<std::size_t, double>> out;
                               for (const auto& s : f.per_group_spread) out.emplace_back(s.group, s.spread);
                               return out;
                             })
      .def_readonly("extrapolation_flags", &Feasibility::extrapolation_flags)
      .def_readonly("feasible", &Feasibility::feasible);
  m.def("predict", [](const FitResult& f, const Vector& x) { return predict(f, x); });
  m.def(
      "feasibility",
      [](const ScalingInfo& s, const GroupStructure& g, const Vector& x, double tol) {
        return feasibility(s, g, x, tol);
      },
      py::arg("scaling"), py::arg("structure"), py::arg("x"), py::arg("tolerance") = kDefaultFeasibilityTolerance);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("n", &SimConfig::n)
      .def_readwrite("w1", &SimConfig::w1)
      .def_readwrite("w2", &SimConfig::w2)
      .def_readwrite("gamma", &SimConfig::gamma)
      .def_readwrite("beta", &SimConfig::beta)
      .def_readwrite("sigma", &SimConfig::sigma)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("reps", &SimConfig::reps);
  m.def("derive_seed", &derive_seed);
  m.def("generate_design", [](const SimConfig& c) { return to_rows(generate_design(c)); });
  m.def("design_group_structure", &design_group_structure);
  m.def("design_effect_specs", &design_effect_specs, py::arg("scaling"), py::arg("delta") = 0.05);

  py::class_<McEffectRow>(m, "McEffectRow")
      .def_readonly("label", &McEffectRow::label)
      .def_readonly("exact", &McEffectRow::exact)
      .def_readonly("mc_mean", &McEffectRow::mc_mean)
      .def_readonly("mc_var", &McEffectRow::mc_var)
      .def_readonly("mean_est_var", &McEffectRow::mean_est_var)
      .def_readonly("var_est_var", &McEffectRow::var_est_var)
      .def_readonly("reps", &McEffectRow::reps)
      .def_property_readonly("mean_se", &McEffectRow::mean_se);
  m.def("monte_carlo_effects",
        [](const Rows& x, const SimConfig& c, const std::vector<GroupEffectSpec>& specs, const GroupStructure& g) {
          return monte_carlo_effects(to_matrix(x), c, specs, g);
        });

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("point", &ComparisonRow::point)
      .def_readonly("exact", &ComparisonRow::exact)
      .def_readonly("ls_bias", &ComparisonRow::ls_bias)
      .def_readonly("ls_mse", &ComparisonRow::ls_mse)
      .def_readonly("ls_mean_var_hat", &ComparisonRow::ls_mean_var_hat)
      .def_readonly("ridge_bias", &ComparisonRow::ridge_bias)
      .def_readonly("ridge_mse", &ComparisonRow::ridge_mse);
  m.def("compare_predictors", [](const Rows& x, const SimConfig& c, const std::vector<Vector>& points) {
    return compare_predictors(to_matrix(x), c, points);
  });

  py::class_<RidgeResult>(m, "RidgeResult")
      .def_readonly("coefficients", &RidgeResult::coefficients)
      .def_readonly("lam", &RidgeResult::lambda)
      .def_readonly("lambda_grid", &RidgeResult::lambda_grid)
      .def_readonly("cv_error", &RidgeResult::cv_error);
  m.def("ridge_coefficients", &ridge_coefficients, py::arg("data"), py::arg("lam"));
  m.def(
      "ridge_fit",
      [](const Dataset& d, std::optional<Vector> grid, std::size_t folds, std::uint64_t seed) {
        return ridge_fit(d, grid ? *grid : default_lambda_grid(), folds, seed);
      },
      py::arg("data"), py::arg("lambda_grid") = py::none(), py::arg("folds") = 5, py::arg("seed") = 1);

  py::class_<SelectionStability>(m, "SelectionStability")
      .def_readonly("reps", &SelectionStability::reps)
      .def_property_readonly("grouped_counts", [](const SelectionStability& s) { return counts(s.grouped_counts); })
      .def_property_readonly("singleton_counts", [](const SelectionStability& s) { return counts(s.singleton_counts); })
      .def("grouped_hits", &SelectionStability::grouped_hits)
      .def("singleton_hits", &SelectionStability::singleton_hits);
  m.def("selection_stability", [](const Rows& x, const SimConfig& c, const GroupStructure& g) {
    return selection_stability(to_matrix(x), c, g);
  });
}
