#include <algorithm>
#include <cmath>
#include <random>

#include "collinear/error.hpp"
#include "collinear/fixtures.hpp"
#include "collinear/linalg.hpp"
#include "collinear/selection.hpp"
#include "doctest.h"

using namespace collinear;

namespace {

using Cols = std::vector<std::size_t>;

GroupStructure structure_of(const std::vector<Cols>& groups, std::size_t k) {
  GroupStructure g;
  g.groups = groups;
  g.signs.assign(k, 1);
  return g;
}

// Every group is wholly in or wholly out of the column set.
bool atomic(const Cols& columns, const GroupStructure& g) {
  for (const auto& grp : g.groups) {
    std::size_t in = 0;
    for (std::size_t j : grp) in += std::binary_search(columns.begin(), columns.end(), j);
    if (in != 0 && in != grp.size()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("candidate enumeration counts") {
  CHECK(enumerate_candidates(structure_of({{0, 2}, {1, 3}, {4}}, 5)).size() == 7);
  CHECK(enumerate_candidates(singleton_structure(6)).size() == 63);
  CHECK(enumerate_candidates(structure_of({{0, 1}, {2, 3}, {4}, {5}}, 6)).size() == 15);
  CHECK_THROWS_AS(enumerate_candidates(singleton_structure(21)), TooManyGroups);
  const auto c = enumerate_candidates(structure_of({{0, 2}, {1}}, 3));
  CHECK(c[0].columns == Cols{0, 2});
  CHECK(c[1].columns == Cols{1});
  CHECK(c[2].columns == Cols{0, 1, 2});
}

TEST_CASE("all-subsets on augmented Hald") {
  const Dataset d = fixtures::hald_augmented();
  const GroupStructure grouped = detect_groups(correlation_matrix(d.x()));
  const SelectionReport g = all_subsets(d, grouped);
  CHECK(g.ranked.size() == 7);
  CHECK(g.chosen.columns == Cols{0, 1, 2, 3});
  CHECK(std::abs(g.chosen.adj_r2 - 0.97356343) < 1e-7);

  const SelectionReport s = all_subsets(d, singleton_structure(5));
  CHECK(s.ranked.size() == 31);
  CHECK(s.chosen.columns == Cols{0, 1, 3});
  CHECK(std::abs(s.chosen.adj_r2 - 0.97644727) < 1e-7);
  CHECK(s.ranked.back().columns == Cols{4});
  CHECK(std::abs(s.ranked.back().adj_r2 - (-0.09032567)) < 1e-7);

  // Ranked best first and grouped optimum never beats the ungrouped one.
  for (std::size_t i = 1; i < s.ranked.size(); ++i) CHECK(!better_candidate(s.ranked[i], s.ranked[i - 1]));
  CHECK(g.chosen.adj_r2 <= s.chosen.adj_r2);
  for (const auto& m : g.ranked) CHECK(atomic(m.columns, grouped));
}

TEST_CASE("backward elimination on augmented Hald") {
  const Dataset d = fixtures::hald_augmented();
  const GroupStructure grouped = detect_groups(correlation_matrix(d.x()));
  const SelectionReport g = backward(d, grouped, 0.1);
  CHECK(g.chosen.columns == Cols{0, 1, 2, 3});
  CHECK(std::abs(g.chosen.adj_r2 - 0.97356) < 5e-6);
  REQUIRE(g.trace.size() == 1);
  CHECK(g.trace[0].columns == Cols{4});

  const SelectionReport s = backward(d, singleton_structure(5), 0.1);
  // Old x1 and x2 are the renamed x1 and x3.
  CHECK(s.chosen.columns == Cols{0, 1});
  CHECK(std::abs(s.chosen.adj_r2 - 0.97441) < 5e-6);
  for (const auto& step : s.trace) CHECK(step.p > 0.1);
  for (std::size_t i = 0; i < g.trace.size(); ++i) CHECK(atomic(g.trace[i].columns, grouped));
}

TEST_CASE("backward keeps a strong-signal model whole") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Matrix x(30, 3);
  Vector y(30);
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t j = 0; j < 3; ++j) x(i, j) = g(rng);
    y[i] = 1 + 5 * x(i, 0) - 4 * x(i, 1) + 3 * x(i, 2) + 0.1 * g(rng);
  }
  const Dataset d({"a", "b", "c"}, x, y);
  const SelectionReport r = backward(d, singleton_structure(3), 0.1);
  CHECK(r.trace.empty());
  CHECK(r.chosen.columns == Cols{0, 1, 2});
}

TEST_CASE("backward keeps at least one group") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Matrix x(20, 2);
  Vector y(20);
  for (std::size_t i = 0; i < 20; ++i) {
    x(i, 0) = g(rng);
    x(i, 1) = g(rng);
    y[i] = g(rng);
  }
  const SelectionReport r = backward(Dataset({"a", "b"}, x, y), singleton_structure(2), 0.0);
  CHECK(r.chosen.columns.size() == 1);
}

TEST_CASE("single predictor") {
  const Dataset d({"x"}, Matrix{{1}, {2}, {3}, {5}}, Vector{1, 3, 2, 6});
  const SelectionReport r = all_subsets(d, singleton_structure(1));
  CHECK(r.ranked.size() == 1);
  CHECK(r.chosen.columns == Cols{0});
}

TEST_CASE("singular candidates are skipped and reported") {
  const Matrix x{{1, 2, 0.5}, {2, 4, -1}, {3, 6, 2}, {4, 8, 0}, {5, 10, 1}, {6, 12, 3}};
  const Dataset d({"a", "b", "c"}, x, Vector{1, 2, 2, 5, 4, 7});
  const SelectionReport r = all_subsets(d, singleton_structure(3));
  CHECK(r.ranked.size() == 5);
  CHECK(r.skipped.size() == 2);
  for (const auto& s : r.skipped) CHECK(!s.reason.empty());
}

TEST_CASE("ties break on size, then column order") {
  CandidateModel a{{0}, {0, 1}, 0.5};
  CandidateModel b{{1}, {2}, 0.5};
  CandidateModel c{{2}, {3}, 0.5};
  CHECK(better_candidate(b, a));
  CHECK(better_candidate(b, c));
  CHECK(!better_candidate(c, b));
  CHECK(!better_candidate(a, a));
}

TEST_CASE("selection is deterministic and atomic on random groupings") {
  const Dataset d = fixtures::sim_xd(11);
  const GroupStructure g = structure_of({{0, 1}, {2, 3}, {4}, {5}}, 6);
  const SelectionReport a = all_subsets(d, g);
  const SelectionReport b = all_subsets(d, g);
  REQUIRE(a.ranked.size() == b.ranked.size());
  for (std::size_t i = 0; i < a.ranked.size(); ++i) {
    CHECK(a.ranked[i].columns == b.ranked[i].columns);
    CHECK(a.ranked[i].adj_r2 == b.ranked[i].adj_r2);
    CHECK(atomic(a.ranked[i].columns, g));
  }
  const SelectionReport back = backward(d, g, 0.1);
  CHECK(atomic(back.chosen.columns, g));
  const SelectionReport s = all_subsets(d, singleton_structure(6));
  CHECK(a.chosen.adj_r2 <= s.chosen.adj_r2);
  const bool same = a.chosen.columns == s.chosen.columns;
  CHECK(same == (a.chosen.adj_r2 == s.chosen.adj_r2));
}
