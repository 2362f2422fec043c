#include "collinear/fixtures.hpp"

#include "collinear/simulate.hpp"

namespace collinear::fixtures {

namespace {

// Rows of y, x1, x2, x3, x4, x5.
constexpr double kHaldAugmented[13][6] = {
    {78.5, 7, 26, 6, 60, 10.772436},   {74.3, 1, 29, 15, 52, 11.059010},
    {104.3, 11, 56, 8, 20, 9.872811},  {87.6, 11, 31, 8, 47, 7.577711},
    {95.9, 7, 52, 6, 33, 8.864993},    {109.2, 11, 55, 9, 22, 10.749495},
    {102.7, 3, 71, 17, 6, 7.701774},   {72.5, 1, 31, 22, 44, 12.146993},
    {93.1, 2, 54, 18, 22, 12.297858},  {115.9, 21, 47, 4, 26, 14.294489},
    {83.8, 1, 40, 23, 34, 8.218245},   {113.3, 11, 66, 9, 12, 9.845383},
    {109.4, 10, 68, 8, 12, 8.680111},
};

constexpr double kHaldRenamed[13][5] = {
    {78.5, 7, -6, 26, -60},  {74.3, 1, -15, 29, -52}, {104.3, 11, -8, 56, -20},
    {87.6, 11, -8, 31, -47}, {95.9, 7, -6, 52, -33},  {109.2, 11, -9, 55, -22},
    {102.7, 3, -17, 71, -6}, {72.5, 1, -22, 31, -44}, {93.1, 2, -18, 54, -22},
    {115.9, 21, -4, 47, -26}, {83.8, 1, -23, 40, -34}, {113.3, 11, -9, 66, -12},
    {109.4, 10, -8, 68, -12},
};

constexpr double kSimDesign[12][6] = {
    {1.33247194, 2.38707243, 0.35045404, 1.1355655, -1.66362725, 0.82837127},
    {0.82081027, -0.04932373, -1.81765385, -3.3503997, 1.76569602, 0.43909989},
    {-0.29595458, -0.27168960, 0.04750956, 0.7710956, 0.50504306, -1.07289930},
    {-0.45687467, -0.96368003, 0.79497781, 1.6863252, -0.22227593, -1.92318639},
    {0.62474607, 0.01700248, 1.68893821, 2.4008808, -0.82581051, -2.15037060},
    {0.05469564, 0.40265862, -0.71020015, -1.1235155, -0.80982723, 1.37227484},
    {0.30456557, 0.37345144, -1.47371005, -1.7492288, 0.93406886, 0.82796429},
    {0.48008957, 1.35339554, -0.42040266, 0.2643296, -0.01488494, 3.73023350},
    {-0.68291613, -0.56048771, 1.58447035, 2.3769584, -0.90045687, -0.57890494},
    {1.61956212, 2.33300610, 0.09129845, 0.2557185, -0.36214200, 0.07201769},
    {2.84612051, 3.24706230, -0.95907566, -1.1348475, -0.31756247, -0.26719905},
    {0.60236279, 0.73704811, 0.86278183, 1.0274744, 1.91966047, -0.32319049},
};

template <std::size_t Rows, std::size_t Cols>
Dataset from_table(const double (&table)[Rows][Cols]) {
  std::vector<std::string> names;
  for (std::size_t j = 1; j < Cols; ++j) names.push_back("x" + std::to_string(j));
  Matrix x(Rows, Cols - 1);
  Vector y(Rows);
  for (std::size_t i = 0; i < Rows; ++i) {
    y[i] = table[i][0];
    for (std::size_t j = 1; j < Cols; ++j) x(i, j - 1) = table[i][j];
  }
  return Dataset(std::move(names), std::move(x), std::move(y), "y");
}

}  // namespace

Dataset hald_augmented() { return from_table(kHaldAugmented); }

Dataset hald_renamed() { return from_table(kHaldRenamed); }

Matrix sim_design() {
  Matrix x(12, 6);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 6; ++j) x(i, j) = kSimDesign[i][j];
  return x;
}

Dataset sim_xd(std::uint64_t seed) {
  const SimConfig cfg;
  Matrix x = sim_design();
  Vector y = generate_response(x, cfg.beta, cfg.sigma, seed);
  return Dataset({"x1", "x2", "x3", "x4", "x5", "x6"}, std::move(x), std::move(y), "y");
}

std::vector<Vector> hald_prediction_points() {
  return {
      {7.46153, -11.76923, 48.15385, -30.00000},
      {3.18232, -15.98495, 64.86423, -10.86569},
      {7.25776, -11.10359, 46.53671, -28.84034},
      {-4.76478, -25.08204, 75.10608, -1.00862},
      {13.57470, -18.42563, 75.10608, -47.39482},
  };
}

std::vector<Vector> sim_prediction_points() {
  // The first point sits at the design's column means; printed to five
  // decimals it reads (0.60413, 0.75045, 0.00328, 0.21336).
  const Matrix x = sim_design();
  Vector center{0, 0, 0, 0, 1, 2};
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < x.rows(); ++i) center[j] += x(i, j);
    center[j] /= static_cast<double>(x.rows());
  }
  return {
      center,
      {0.93025, 1.27245, 0.75025, 1.48901, 1, 2},
      {1.58247, 1.18545, 0.75025, 3.11257, 1, 2},
  };
}

}  // namespace collinear::fixtures
