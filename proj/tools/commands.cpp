#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "collinear/error.hpp"
#include "collinear/fixtures.hpp"
#include "collinear/linalg.hpp"
#include "collinear/ols.hpp"
#include "collinear/selection.hpp"
#include "collinear/simulate.hpp"

namespace collinear::cli {

namespace {

std::string annotated(const std::string& name, int sign) {
  return sign < 0 ? name + " (-)" : name;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string column_set(const Dataset& d, const std::vector<std::size_t>& cols,
                       const GroupStructure* s = nullptr) {
  std::vector<std::string> names;
  for (std::size_t c : cols)
    names.push_back(s ? annotated(d.predictor_names()[c], s->signs[c]) : d.predictor_names()[c]);
  return "{" + join(names, ", ") + "}";
}

std::string weights_text(const Vector& w) {
  std::vector<std::string> parts;
  for (double v : w) parts.push_back(format_number(v, 5));
  return "(" + join(parts, ", ") + ")";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double parse_double(const std::string& text, std::size_t row, std::size_t col) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    throw ParseError(row, col, "not a number: '" + t + "'");
  return v;
}

// Sample quantile with linear interpolation between order statistics.
double quantile(Vector v, double q) {
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

void add_fit_sections(ReportDocument& doc, const std::string& prefix, const std::string& title,
                      const FitResult& f) {
  Section& s = doc.add(prefix, title);
  Table coefs{"coefficients", {"term", "estimate", "std_error", "t_value", "p_value"}, {}};
  for (const CoefTest& t : coef_tests(f))
    coefs.rows.push_back({t.name, t.estimate, t.se, t.t, t.p});
  s.fields = {
      {"residual_min", quantile(f.residuals, 0.0)},
      {"residual_q1", quantile(f.residuals, 0.25)},
      {"residual_median", quantile(f.residuals, 0.5)},
      {"residual_q3", quantile(f.residuals, 0.75)},
      {"residual_max", quantile(f.residuals, 1.0)},
      {"sigma_hat", f.sigma_hat},
      {"df_residual", static_cast<long long>(f.df_residual)},
      {"r_squared", f.r2},
      {"adj_r_squared", f.adj_r2},
      {"f_statistic", f.f_stat},
      {"f_df1", static_cast<long long>(f.columns.size())},
      {"f_df2", static_cast<long long>(f.df_residual)},
      {"f_p_value", f.f_p},
      {"intercept", f.has_intercept},
  };
  s.tables.push_back(std::move(coefs));
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("COLLINEAR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError(std::string("COLLINEAR_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

Dataset load_fixture(const std::string& name, std::uint64_t seed) {
  if (name == "hald-augmented") return fixtures::hald_augmented();
  if (name == "hald-renamed") return fixtures::hald_renamed();
  if (name == "sim-xd") return fixtures::sim_xd(seed);
  throw Error(ErrorKind::Input, "unknown fixture '" + name + "'");
}

// ---- fit -----------------------------------------------------------------------

ReportDocument cmd_fit(const Dataset& d, const FitOptions& opt) {
  ReportDocument doc;
  doc.command = "fit";
  const FitResult f = fit(d);
  add_fit_sections(doc, "fit", "Least squares fit", f);

  Section& v = doc.add("vif", "Variance inflation factors");
  Table vt{"vif", {"predictor", "vif"}, {}};
  const auto vifs = vif(d, f.columns);
  for (std::size_t j = 0; j < vifs.size(); ++j) vt.rows.push_back({f.column_ids[j], vifs[j]});
  v.tables.push_back(std::move(vt));

  if (!opt.test_groups.empty()) {
    Section& t = doc.add("partial_f", "Partial F tests");
    Table tt{"partial_f", {"dropped", "f", "df1", "df2", "p_value"}, {}};
    for (const auto& names : opt.test_groups) {
      std::set<std::size_t> drop;
      for (const auto& n : names) drop.insert(d.index_of(n));
      std::vector<std::size_t> keep;
      for (std::size_t c : f.columns)
        if (!drop.count(c)) keep.push_back(c);
      const PartialFTest pf = partial_f_test(f, fit(d, keep, true));
      tt.rows.push_back({"{" + join(names, ", ") + "}", pf.f, static_cast<long long>(pf.df1),
                         static_cast<long long>(pf.df2), pf.p});
    }
    t.tables.push_back(std::move(tt));
  }

  if (opt.standardized) {
    const StandardizedData sd = standardize(d);
    const FitResult fs = fit(sd.data, all_columns(sd.data), false);
    add_fit_sections(doc, "standardized_fit", "Standardized model (no intercept)", fs);
    Section& s = doc.sections.back();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < fs.coefficients.size(); ++i) {
      lo = std::min(lo, std::sqrt(fs.coef_covariance(i, i)));
      hi = std::max(hi, std::sqrt(fs.coef_covariance(i, i)));
    }
    s.fields.push_back({"se_min", lo});
    s.fields.push_back({"se_max", hi});
  }
  return doc;
}

// ---- groups ------------------------------------------------------------------------

ReportDocument cmd_groups(const Dataset& d, double threshold) {
  ReportDocument doc;
  doc.command = "groups";
  const Matrix r = correlation_matrix(d.x());
  const GroupStructure gs = detect_groups(r, threshold);
  const ScalingInfo sc = scaling_of(d);

  Section& c = doc.add("correlation", "Correlation matrix");
  Table ct{"correlation", {""}, {}};
  for (const auto& n : d.predictor_names()) ct.columns.push_back(n);
  for (std::size_t i = 0; i < d.k(); ++i) {
    std::vector<Cell> row{d.predictor_names()[i]};
    for (std::size_t j = 0; j < d.k(); ++j) row.push_back(r(i, j));
    ct.rows.push_back(std::move(row));
  }
  c.tables.push_back(std::move(ct));

  Section& g = doc.add("groups", "Strongly correlated groups");
  g.fields.push_back({"threshold", gs.threshold_used});
  g.fields.push_back({"group_count", static_cast<long long>(gs.groups.size())});
  Table gt{"groups", {"group", "members", "apc_signs", "variability_weights"}, {}};
  for (std::size_t i = 0; i < gs.groups.size(); ++i) {
    const auto& members = gs.groups[i];
    std::vector<std::string> signs;
    for (std::size_t j : members) signs.push_back(gs.signs[j] < 0 ? "-" : "+");
    gt.rows.push_back({static_cast<long long>(i + 1), column_set(d, members, &gs),
                       "(" + join(signs, ", ") + ")",
                       weights_text(variability_weights(sc, members).weights)});
  }
  g.tables.push_back(std::move(gt));
  g.notes = gs.warnings;

  Section& a = doc.add("apc_correlation", "Correlation matrix after sign adjustment");
  Table at{"apc_correlation", {""}, {}};
  for (std::size_t j = 0; j < d.k(); ++j)
    at.columns.push_back(annotated(d.predictor_names()[j], gs.signs[j]));
  for (std::size_t i = 0; i < d.k(); ++i) {
    std::vector<Cell> row{annotated(d.predictor_names()[i], gs.signs[i])};
    for (std::size_t j = 0; j < d.k(); ++j) row.push_back(gs.signs[i] * gs.signs[j] * r(i, j));
    at.rows.push_back(std::move(row));
  }
  a.tables.push_back(std::move(at));
  return doc;
}

// ---- select --------------------------------------------------------------------------

ReportDocument cmd_select(const Dataset& d, const SelectOptions& opt) {
  ReportDocument doc;
  doc.command = "select";
  const GroupStructure gs = opt.grouped ? detect_groups(correlation_matrix(d.x()), opt.threshold)
                                        : singleton_structure(d.k());
  Section& s = doc.add("selection", opt.method == "backward" ? "Backward elimination"
                                                               : "All subsets regression");
  s.fields.push_back({"method", opt.method});
  s.fields.push_back({"grouping", std::string(opt.grouped ? "grouped" : "singleton")});
  s.fields.push_back({"group_count", static_cast<long long>(gs.groups.size())});

  SelectionReport rep;
  if (opt.method == "all-subsets") {
    rep = all_subsets(d, gs);
  } else if (opt.method == "backward") {
    s.fields.push_back({"p_rej", opt.p_rej});
    rep = backward(d, gs, opt.p_rej);
  } else {
    throw ValidationError("unknown selection method '" + opt.method + "'");
  }
  s.fields.push_back({"chosen", column_set(d, rep.chosen.columns, &gs)});
  s.fields.push_back({"chosen_adj_r_squared", rep.chosen.adj_r2});

  if (opt.method == "all-subsets") {
    Table t{"ranked", {"rank"}, {}};
    for (const auto& n : d.predictor_names()) t.columns.push_back(n);
    t.columns.insert(t.columns.end(), {"adj_r_squared", "model", "chosen"});
    for (std::size_t i = 0; i < rep.ranked.size(); ++i) {
      const auto& m = rep.ranked[i];
      std::vector<Cell> row{static_cast<long long>(i + 1)};
      for (std::size_t j = 0; j < d.k(); ++j)
        row.push_back(static_cast<long long>(
            std::binary_search(m.columns.begin(), m.columns.end(), j) ? 1 : 0));
      row.push_back(m.adj_r2);
      row.push_back(column_set(d, m.columns, &gs));
      row.push_back(i == 0);
      t.rows.push_back(std::move(row));
    }
    s.tables.push_back(std::move(t));
  } else {
    Table t{"trace", {"step", "dropped", "f", "p_value"}, {}};
    for (std::size_t i = 0; i < rep.trace.size(); ++i)
      t.rows.push_back({static_cast<long long>(i + 1), column_set(d, rep.trace[i].columns, &gs),
                        rep.trace[i].f, rep.trace[i].p});
    s.tables.push_back(std::move(t));
  }
  for (const auto& sk : rep.skipped)
    s.notes.push_back("skipped " + column_set(d, sk.model.columns) + ": " + sk.reason);
  return doc;
}

// ---- effects ---------------------------------------------------------------------------

std::vector<EffectRequest> parse_effect_requests(std::istream& in) {
  std::vector<EffectRequest> out;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto parts = split(line, ';');
    if (parts.size() < 3 || parts.size() > 4)
      throw ParseError(row, 1, "expected 'label; members; weights|avg|vwa [; delta]'");
    EffectRequest r;
    r.label = trim(parts[0]);
    r.members = words(parts[1]);
    if (r.label.empty()) throw ParseError(row, 1, "empty label");
    if (r.members.empty()) throw ParseError(row, 2, "no members");
    const auto w = words(parts[2]);
    if (w.size() == 1 && (w[0] == "avg" || w[0] == "vwa")) {
      r.keyword = w[0];
    } else {
      if (w.empty()) throw ParseError(row, 3, "no weights");
      for (const auto& v : w) r.weights.push_back(parse_double(v, row, 3));
    }
    if (parts.size() == 4) r.delta = parse_double(parts[3], row, 4);
    out.push_back(std::move(r));
  }
  return out;
}

GroupEffectSpec resolve_effect(const EffectRequest& req, const Dataset& d, const ScalingInfo& s) {
  std::vector<std::size_t> members;
  for (const auto& n : req.members) {
    const auto j = d.find(n);
    if (!j) throw ColumnsMissing("effect '" + req.label + "' names unknown predictor '" + n + "'");
    members.push_back(*j);
  }
  GroupEffectSpec spec;
  if (req.keyword == "avg")
    spec = average_effect(members, req.label);
  else if (req.keyword == "vwa")
    spec = variability_weights(s, members, req.label);
  else
    spec = make_effect(req.label, members, req.weights);
  if (req.delta != 0.0) spec = perturb_effect(spec, req.delta, req.label);
  return spec;
}

ReportDocument cmd_effects(const Dataset& d, const EffectsOptions& opt) {
  ReportDocument doc;
  doc.command = "effects";
  const GroupStructure gs = detect_groups(correlation_matrix(d.x()), opt.threshold);
  const ScalingInfo sc = scaling_of(d);
  const FitResult f = fit(d);

  std::vector<GroupEffectSpec> specs;
  if (opt.requests.empty()) {
    for (const auto& g : gs.groups) {
      std::vector<std::string> names;
      for (std::size_t j : g) names.push_back(d.predictor_names()[j]);
      const std::string tag = join(names, "");
      if (g.size() == 1) {
        specs.push_back(make_effect("beta_" + tag, g, {1.0}));
      } else {
        specs.push_back(variability_weights(sc, g, "vwa_" + tag));
        specs.push_back(average_effect(g, "avg_" + tag));
      }
    }
  } else {
    for (const auto& r : opt.requests) specs.push_back(resolve_effect(r, d, sc));
  }

  Section& s = doc.add("effects", "Group effects");
  s.fields.push_back({"sigma_hat", f.sigma_hat});
  s.fields.push_back({"df_residual", static_cast<long long>(f.df_residual)});
  s.fields.push_back({"estimability_threshold", opt.c_threshold});
  Table t{"effects",
          {"effect", "members", "weights", "raw_weights", "estimate", "std_error", "t_value",
           "p_value", "kappa", "variance_ratio", "estimable"},
          {}};
  for (const auto& spec : specs) {
    const EffectEstimate e = estimate_effect(f, spec, gs, sc, opt.c_threshold);
    Vector raw(spec.weights.size());
    for (std::size_t m = 0; m < raw.size(); ++m) raw[m] = spec.weights[m] * gs.signs[spec.members[m]];
    t.rows.push_back({spec.label, column_set(d, spec.members, &gs), weights_text(spec.weights),
                      weights_text(raw), e.estimate, e.se, e.t, e.p, *e.kappa, *e.variance_ratio,
                      *e.estimable});
  }
  s.tables.push_back(std::move(t));
  s.notes = gs.warnings;
  return doc;
}

// ---- predict -----------------------------------------------------------------------------

std::vector<LabeledPoint> parse_points(std::istream& in, const Dataset& d) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, 1, "empty points file");
  auto header = split(line, ',');
  for (auto& h : header) h = trim(h);
  std::optional<std::size_t> label_col;
  std::vector<std::size_t> target(header.size(), d.k());
  std::set<std::size_t> seen;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "label") {
      label_col = c;
      continue;
    }
    const auto j = d.find(header[c]);
    if (!j) throw DimensionMismatch("points file column '" + header[c] + "' is not a predictor");
    if (!seen.insert(*j).second) throw DuplicateName(header[c]);
    target[c] = *j;
  }
  if (seen.size() != d.k())
    throw DimensionMismatch("points file has " + std::to_string(seen.size()) +
                            " predictor columns, model has " + std::to_string(d.k()));
  std::vector<LabeledPoint> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size())
      throw DimensionMismatch("points row " + std::to_string(row) + " has " +
                              std::to_string(cells.size()) + " values, expected " +
                              std::to_string(header.size()));
    LabeledPoint p;
    p.x.assign(d.k(), 0.0);
    p.label = "x" + std::to_string(out.size() + 1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_col && c == *label_col)
        p.label = trim(cells[c]);
      else
        p.x[target[c]] = parse_double(cells[c], row, c + 1);
    }
    out.push_back(std::move(p));
  }
  return out;
}

ReportDocument cmd_predict(const Dataset& d, const PredictOptions& opt) {
  ReportDocument doc;
  doc.command = "predict";
  const GroupStructure gs = detect_groups(correlation_matrix(d.x()), opt.threshold);
  const ScalingInfo sc = scaling_of(d);
  const FitResult f = fit(d);

  Section& s = doc.add("predictions", "Predictions");
  s.fields.push_back({"sigma_hat_squared", f.sigma_hat * f.sigma_hat});
  s.fields.push_back({"tolerance", opt.tolerance});
  Table t{"predictions", {"point", "predicted", "estimated_variance", "feasible"}, {}};
  for (const auto& g : gs.groups)
    if (g.size() > 1) t.columns.push_back("spread " + column_set(d, g, &gs));
  t.columns.push_back("standardized");
  t.columns.push_back("extrapolated");

  for (const auto& p : opt.points) {
    if (p.x.size() != d.k())
      throw DimensionMismatch("point '" + p.label + "' has " + std::to_string(p.x.size()) +
                              " values, model has " + std::to_string(d.k()));
    const PredictionReport r = predict_with_report(f, sc, gs, p.x, opt.tolerance);
    std::vector<Cell> row{p.label, r.prediction.y_hat, r.prediction.var_hat, r.feasibility.feasible};
    for (const auto& sp : r.feasibility.per_group_spread) row.push_back(sp.spread);
    std::vector<std::string> coords, flagged;
    for (std::size_t j = 0; j < d.k(); ++j) {
      coords.push_back(format_number(r.feasibility.standardized[j], 2));
      if (r.feasibility.extrapolation_flags[j]) flagged.push_back(d.predictor_names()[j]);
    }
    row.push_back("(" + join(coords, ", ") + ")");
    row.push_back(flagged.empty() ? std::string("none") : join(flagged, " "));
    t.rows.push_back(std::move(row));
  }
  s.tables.push_back(std::move(t));
  return doc;
}

// ---- simulate ------------------------------------------------------------------------------

ReportDocument cmd_simulate(const SimulateOptions& opt) {
  ReportDocument doc;
  doc.command = "simulate";
  SimConfig cfg;
  cfg.seed = opt.seed;
  cfg.reps = opt.reps.value_or(opt.preset == "selection-stability" ? 100 : 1000);
  SimConfig design_cfg = cfg;
  design_cfg.seed = derive_seed(opt.seed, 0xD5);
  const Matrix x = opt.generated_design ? generate_design(design_cfg) : fixtures::sim_design();
  cfg.n = x.rows();
  const ScalingInfo sc =
      scaling_of(Dataset(default_names(x.cols()), x, Vector(x.rows(), 0.0)));
  const GroupStructure gs = design_group_structure();

  Section& s = doc.add("simulation", "Simulation: " + opt.preset);
  s.fields = {{"preset", opt.preset},
              {"seed", static_cast<long long>(opt.seed)},
              {"reps", static_cast<long long>(cfg.reps)},
              {"design", std::string(opt.generated_design ? "generated" : "fixture")},
              {"n", static_cast<long long>(cfg.n)}};

  if (opt.preset == "table1" || opt.preset == "table2") {
    const auto specs = design_effect_specs(sc);
    const auto rows = monte_carlo_effects(x, cfg, specs, gs);
    s.fields.push_back({"xi1_weights", weights_text(specs[0].weights)});
    s.fields.push_back({"xi2_weights", weights_text(specs[1].weights)});
    if (opt.preset == "table1") {
      Table t{"effects", {"effect", "exact", "mean", "mean_se", "variance"}, {}};
      for (const auto& r : rows) t.rows.push_back({r.label, r.exact, r.mc_mean, r.mean_se(), r.mc_var});
      s.tables.push_back(std::move(t));
    } else {
      Table t{"variances",
              {"effect", "observed_variance", "mean_estimated_variance",
               "variance_of_estimated_variance"},
              {}};
      for (std::size_t i = 0; i < 6; ++i)
        t.rows.push_back({rows[i].label, rows[i].mc_var, rows[i].mean_est_var, rows[i].var_est_var});
      s.tables.push_back(std::move(t));
    }
  } else if (opt.preset == "predict-compare") {
    const auto rows = compare_predictors(x, cfg, fixtures::sim_prediction_points());
    Table t{"comparison",
            {"point", "exact", "ls_bias", "ls_mse", "ls_mean_var_hat", "ridge_bias", "ridge_mse"},
            {}};
    for (std::size_t i = 0; i < rows.size(); ++i)
      t.rows.push_back({"x" + std::to_string(i + 1), rows[i].exact, rows[i].ls_bias,
                        rows[i].ls_mse, rows[i].ls_mean_var_hat, rows[i].ridge_bias,
                        rows[i].ridge_mse});
    s.tables.push_back(std::move(t));
  } else if (opt.preset == "selection-stability") {
    const SelectionStability st = selection_stability(x, cfg, gs);
    const std::vector<std::size_t> correct{2, 3, 5};
    const Dataset names(default_names(x.cols()), x, Vector(x.rows(), 0.0));
    s.fields.push_back({"grouped_candidates", static_cast<long long>(st.grouped_candidates)});
    s.fields.push_back({"singleton_candidates", static_cast<long long>(st.singleton_candidates)});
    s.fields.push_back({"correct_model", column_set(names, correct)});
    s.fields.push_back({"grouped_correct", static_cast<long long>(st.grouped_hits(correct))});
    s.fields.push_back({"singleton_correct", static_cast<long long>(st.singleton_hits(correct))});
    s.fields.push_back({"grouped_distinct", static_cast<long long>(st.grouped_counts.size())});
    s.fields.push_back({"singleton_distinct", static_cast<long long>(st.singleton_counts.size())});
    std::set<std::vector<std::size_t>> models;
    for (const auto& [m, c] : st.grouped_counts) models.insert(m);
    for (const auto& [m, c] : st.singleton_counts) models.insert(m);
    Table t{"chosen_models", {"model", "singleton_count", "grouped_count"}, {}};
    for (const auto& m : models)
      t.rows.push_back({column_set(names, m), static_cast<long long>(st.singleton_hits(m)),
                        static_cast<long long>(st.grouped_hits(m))});
    s.tables.push_back(std::move(t));
  } else {
    throw ValidationError("unknown simulation preset '" + opt.preset + "'");
  }
  return doc;
}

// ---- dispatch ------------------------------------------------------------------------------

namespace {

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input:
      return kExitInput;
    case ErrorKind::Numerical:
      return kExitNumerical;
    case ErrorKind::Validation:
      return kExitValidation;
  }
  return 1;
}

struct DataSource {
  std::string input;
  std::string fixture;
  std::string response = "y";
};

void add_data_options(CLI::App* cmd, DataSource& src) {
  auto* in = cmd->add_option("-i,--input", src.input, "Input CSV file");
  auto* fx = cmd->add_option("--fixture", src.fixture, "Embedded dataset")
                 ->check(CLI::IsMember({"hald-augmented", "hald-renamed", "sim-xd"}));
  in->excludes(fx);
  cmd->add_option("-r,--response", src.response, "Response column name");
}

Dataset resolve_data(const DataSource& src, std::uint64_t seed) {
  if (!src.fixture.empty()) return load_fixture(src.fixture, seed);
  if (src.input.empty()) throw Error(ErrorKind::Input, "one of --input or --fixture is required");
  return load_csv(src.input, src.response);
}

std::vector<std::string> comma_list(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& p : split(s, ','))
    if (!trim(p).empty()) out.push_back(trim(p));
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group-based least squares analysis for strongly correlated predictors"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  int decimals = 5;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--decimals", decimals, "Decimal places in text output")
      ->check(CLI::Range(0, 15));
  app.add_option("--seed", seed_flag, "Random seed (default: COLLINEAR_SEED or 1)");

  DataSource src;
  FitOptions fit_opt;
  std::vector<std::string> test_groups;
  auto* fit_cmd = app.add_subcommand("fit", "Least squares fit with diagnostics");
  add_data_options(fit_cmd, src);
  fit_cmd->add_flag("--standardized", fit_opt.standardized, "Also fit the standardized model");
  fit_cmd->add_option("--test-group", test_groups,
                      "Comma-separated predictors for a partial F test (repeatable)");

  double threshold = kDefaultGroupThreshold;
  auto* groups_cmd = app.add_subcommand("groups", "Detect strongly correlated groups");
  add_data_options(groups_cmd, src);

  SelectOptions sel;
  bool singleton = false;
  auto* select_cmd = app.add_subcommand("select", "Group-based variable selection");
  add_data_options(select_cmd, src);
  select_cmd->add_option("--method", sel.method)
      ->check(CLI::IsMember({"all-subsets", "backward"}));
  select_cmd->add_option("--p-rej", sel.p_rej, "Reject p-value for backward elimination");
  auto* grouped_flag = select_cmd->add_flag("--grouped", "Treat groups as units (default)");
  auto* singleton_flag = select_cmd->add_flag("--singleton", singleton, "Ignore groups");
  grouped_flag->excludes(singleton_flag);

  EffectsOptions eff;
  std::string spec_file;
  auto* effects_cmd = app.add_subcommand("effects", "Estimate and test group effects");
  add_data_options(effects_cmd, src);
  effects_cmd->add_option("--spec", spec_file, "Effect specification file");
  effects_cmd->add_option("--estimability", eff.c_threshold, "Variance ratio threshold");

  PredictOptions pred;
  std::string points_file;
  std::vector<std::string> point_values;
  auto* predict_cmd = app.add_subcommand("predict", "Predict with feasibility checks");
  add_data_options(predict_cmd, src);
  predict_cmd->add_option("--points", points_file, "Points CSV file");
  predict_cmd->add_option("--point", point_values, "Comma-separated point (repeatable)");
  predict_cmd->add_option("--tolerance", pred.tolerance, "Within-group spread tolerance");

  for (auto* cmd : {groups_cmd, select_cmd, effects_cmd, predict_cmd})
    cmd->add_option("--threshold", threshold, "Group correlation threshold")
        ->check(CLI::Range(0.0, 1.0));

  SimulateOptions sim;
  std::size_t reps = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo studies on the simulation design");
  sim_cmd->add_option("--preset", sim.preset)
      ->check(CLI::IsMember({"table1", "table2", "predict-compare", "selection-stability"}));
  auto* reps_opt = sim_cmd->add_option("--reps", reps, "Replicates")->check(CLI::PositiveNumber);
  sim_cmd->add_flag("--generated-design", sim.generated_design,
                    "Draw a fresh design instead of the fixture");
  sim_cmd->add_option("--seed", seed_flag, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    const int code = app.exit(e, os, os);
    err << os.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
    ReportDocument doc;
    if (*fit_cmd) {
      for (const auto& g : test_groups) fit_opt.test_groups.push_back(comma_list(g));
      doc = cmd_fit(resolve_data(src, seed), fit_opt);
    } else if (*groups_cmd) {
      doc = cmd_groups(resolve_data(src, seed), threshold);
    } else if (*select_cmd) {
      sel.grouped = !singleton;
      sel.threshold = threshold;
      doc = cmd_select(resolve_data(src, seed), sel);
    } else if (*effects_cmd) {
      eff.threshold = threshold;
      if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        if (!in) throw Error(ErrorKind::Input, "cannot open '" + spec_file + "'");
        eff.requests = parse_effect_requests(in);
      }
      doc = cmd_effects(resolve_data(src, seed), eff);
    } else if (*predict_cmd) {
      const Dataset d = resolve_data(src, seed);
      pred.threshold = threshold;
      if (!points_file.empty()) {
        std::ifstream in(points_file);
        if (!in) throw Error(ErrorKind::Input, "cannot open '" + points_file + "'");
        pred.points = parse_points(in, d);
      }
      for (const auto& pv : point_values) {
        LabeledPoint p;
        p.label = "x" + std::to_string(pred.points.size() + 1);
        const auto parts = split(pv, ',');
        for (std::size_t c = 0; c < parts.size(); ++c) p.x.push_back(parse_double(parts[c], 1, c + 1));
        pred.points.push_back(std::move(p));
      }
      if (pred.points.empty() && src.fixture == "hald-renamed") {
        for (const auto& x : fixtures::hald_prediction_points())
          pred.points.push_back({"x" + std::to_string(pred.points.size() + 1), x});
      }
      if (pred.points.empty()) throw ValidationError("no prediction points given");
      doc = cmd_predict(d, pred);
    } else if (*sim_cmd) {
      sim.seed = seed;
      if (*reps_opt) sim.reps = reps;
      doc = cmd_simulate(sim);
    }
    if (format == "json")
      out << doc.render_json();
    else if (format == "csv")
      out << doc.render_csv();
    else
      out << doc.render_text(decimals);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace collinear::cli
