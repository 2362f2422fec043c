#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "collinear/dataset.hpp"
#include "collinear/groups.hpp"
#include "collinear/predict.hpp"
#include "report.hpp"

namespace collinear::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitValidation = 4;

/// Seed from COLLINEAR_SEED, else 1.
std::uint64_t default_seed();

/// Embedded datasets: hald-augmented, hald-renamed, sim-xd.
Dataset load_fixture(const std::string& name, std::uint64_t seed);

struct FitOptions {
  bool standardized = false;
  std::vector<std::vector<std::string>> test_groups;  // partial F tests to run
};
ReportDocument cmd_fit(const Dataset& d, const FitOptions& opt = {});

ReportDocument cmd_groups(const Dataset& d, double threshold = kDefaultGroupThreshold);

struct SelectOptions {
  std::string method = "all-subsets";  // or "backward"
  double p_rej = 0.1;
  bool grouped = true;
  double threshold = kDefaultGroupThreshold;
};
ReportDocument cmd_select(const Dataset& d, const SelectOptions& opt = {});

/// One line of an effects file:  label; member names; weights | avg | vwa [; delta]
struct EffectRequest {
  std::string label;
  std::vector<std::string> members;
  std::string keyword;  // "avg", "vwa" or empty when weights are explicit
  Vector weights;
  double delta = 0.0;
};
std::vector<EffectRequest> parse_effect_requests(std::istream& in);
GroupEffectSpec resolve_effect(const EffectRequest& req, const Dataset& d, const ScalingInfo& s);

struct EffectsOptions {
  double threshold = kDefaultGroupThreshold;
  double c_threshold = kDefaultEstimabilityThreshold;
  /// Empty: average and variability-weighted effects of every group.
  std::vector<EffectRequest> requests;
};
ReportDocument cmd_effects(const Dataset& d, const EffectsOptions& opt = {});

/// Points CSV: header with every predictor name (any order) and an optional
/// "label" column.
struct LabeledPoint {
  std::string label;
  Vector x;
};
std::vector<LabeledPoint> parse_points(std::istream& in, const Dataset& d);

struct PredictOptions {
  double threshold = kDefaultGroupThreshold;
  double tolerance = kDefaultFeasibilityTolerance;
  std::vector<LabeledPoint> points;
};
ReportDocument cmd_predict(const Dataset& d, const PredictOptions& opt);

struct SimulateOptions {
  std::string preset = "table1";  // table1 | table2 | predict-compare | selection-stability
  std::uint64_t seed = 1;
  std::optional<std::size_t> reps;
  bool generated_design = false;
};
ReportDocument cmd_simulate(const SimulateOptions& opt);

/// Parses argv, runs a command and writes the report. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace collinear::cli
