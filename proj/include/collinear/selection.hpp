#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "collinear/dataset.hpp"
#include "collinear/groups.hpp"

namespace collinear {

inline constexpr std::size_t kMaxSelectionGroups = 20;

/// A model made of whole groups.
struct CandidateModel {
  std::vector<std::size_t> included_groups;  // ascending group indices
  std::vector<std::size_t> columns;          // ascending predictor indices
  double adj_r2 = 0.0;
};

struct EliminationStep {
  std::size_t group = 0;
  std::vector<std::size_t> columns;
  double f = 0.0;
  double p = 1.0;
};

struct SkippedCandidate {
  CandidateModel model;
  std::string reason;
};

struct SelectionReport {
  std::vector<CandidateModel> ranked;  // best first
  CandidateModel chosen;
  std::vector<EliminationStep> trace;  // backward only
  std::vector<SkippedCandidate> skipped;
};

/// All 2^G - 1 non-empty unions of groups, in bitmask order. Throws TooManyGroups.
std::vector<CandidateModel> enumerate_candidates(const GroupStructure& structure);

/// Fits every candidate with an intercept and ranks by adjusted R^2, breaking
/// ties by fewer columns, then lexicographic column indices.
SelectionReport all_subsets(const Dataset& d, const GroupStructure& structure);

/// Drops, one per step, the group whose joint partial F test has the largest
/// p-value while that p-value exceeds p_rej. At least one group is kept.
SelectionReport backward(const Dataset& d, const GroupStructure& structure, double p_rej = 0.1);

/// Strict weak ordering used for ranking.
bool better_candidate(const CandidateModel& a, const CandidateModel& b);

}  // namespace collinear
