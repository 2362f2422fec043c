#include "collinear/selection.hpp"

#include <algorithm>

#include "collinear/error.hpp"
#include "collinear/ols.hpp"

namespace collinear {

namespace {

std::vector<std::size_t> columns_of(const GroupStructure& s,
                                    const std::vector<std::size_t>& groups) {
  std::vector<std::size_t> cols;
  for (std::size_t g : groups) cols.insert(cols.end(), s.groups[g].begin(), s.groups[g].end());
  std::sort(cols.begin(), cols.end());
  return cols;
}

}  // namespace

bool better_candidate(const CandidateModel& a, const CandidateModel& b) {
  if (a.adj_r2 != b.adj_r2) return a.adj_r2 > b.adj_r2;
  if (a.columns.size() != b.columns.size()) return a.columns.size() < b.columns.size();
  return a.columns < b.columns;
}

std::vector<CandidateModel> enumerate_candidates(const GroupStructure& structure) {
  const std::size_t g = structure.groups.size();
  if (g == 0) throw ValidationError("no groups to select from");
  if (g > kMaxSelectionGroups) throw TooManyGroups(g);
  std::vector<CandidateModel> out;
  out.reserve((std::size_t{1} << g) - 1);
  for (std::size_t mask = 1; mask < (std::size_t{1} << g); ++mask) {
    CandidateModel m;
    for (std::size_t i = 0; i < g; ++i)
      if (mask & (std::size_t{1} << i)) m.included_groups.push_back(i);
    m.columns = columns_of(structure, m.included_groups);
    out.push_back(std::move(m));
  }
  return out;
}

SelectionReport all_subsets(const Dataset& d, const GroupStructure& structure) {
  SelectionReport report;
  for (CandidateModel& m : enumerate_candidates(structure)) {
    try {
      m.adj_r2 = fit(d, m.columns, true).adj_r2;
      report.ranked.push_back(std::move(m));
    } catch (const SingularDesign& e) {
      report.skipped.push_back({std::move(m), e.what()});
    } catch (const InsufficientRows& e) {
      report.skipped.push_back({std::move(m), e.what()});
    }
  }
  if (report.ranked.empty()) throw SingularDesign("every candidate model is singular");
  std::sort(report.ranked.begin(), report.ranked.end(), better_candidate);
  report.chosen = report.ranked.front();
  return report;
}

SelectionReport backward(const Dataset& d, const GroupStructure& structure, double p_rej) {
  if (structure.groups.empty()) throw ValidationError("no groups to select from");
  SelectionReport report;
  std::vector<std::size_t> current(structure.groups.size());
  for (std::size_t g = 0; g < current.size(); ++g) current[g] = g;

  FitResult full = fit(d, columns_of(structure, current), true);
  while (current.size() > 1) {
    std::size_t worst = 0;
    PartialFTest worst_test;
    worst_test.p = -1.0;
    FitResult worst_fit;
    for (std::size_t pos = 0; pos < current.size(); ++pos) {
      std::vector<std::size_t> rest = current;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
      FitResult reduced = fit(d, columns_of(structure, rest), true);
      const PartialFTest t = partial_f_test(full, reduced);
      // Strict comparison keeps the lowest-index group on ties.
      if (t.p > worst_test.p) {
        worst = pos;
        worst_test = t;
        worst_fit = std::move(reduced);
      }
    }
    if (!(worst_test.p > p_rej)) break;
    const std::size_t g = current[worst];
    report.trace.push_back({g, structure.groups[g], worst_test.f, worst_test.p});
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(worst));
    full = std::move(worst_fit);
  }
  CandidateModel chosen;
  chosen.included_groups = current;
  chosen.columns = columns_of(structure, current);
  chosen.adj_r2 = full.adj_r2;
  report.chosen = chosen;
  report.ranked.push_back(std::move(chosen));
  return report;
}

}  // namespace collinear
