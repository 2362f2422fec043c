#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "collinear/dataset.hpp"

namespace collinear::fixtures {

/// Hald cement data (y, x1..x4) plus a noise column x5.
Dataset hald_augmented();

/// Hald data with x2 := -x3_old, x3 := x2_old, x4 := -x4_old so both
/// correlated pairs are positively correlated.
Dataset hald_renamed();

/// The fixed 12x6 simulation design with two correlated pairs.
Matrix sim_design();

/// sim_design() with one response draw from the default simulation model.
Dataset sim_xd(std::uint64_t seed);

/// Five prediction points over hald_renamed's columns.
std::vector<Vector> hald_prediction_points();

/// Three prediction points over sim_design's columns.
std::vector<Vector> sim_prediction_points();

}  // namespace collinear::fixtures
