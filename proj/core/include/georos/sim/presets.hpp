#pragma once

#include <string>
#include <vector>

#include "georos/sim/scenario.hpp"

namespace georos::sim {

/// Heterogeneous two-layer 3D reservoir at desk scale (20x20x4 cells over
/// 1 km x 1 km x 0.1 km): corner injector and producer columns, vertical
/// temperature gradient, natural-state pressure initialization.
ScenarioConfig heterogeneous_3d_desk();

/// Same reservoir on the full 50x50x50 grid (selectable, not exercised by
/// the test suite).
ScenarioConfig heterogeneous_3d_full();

/// Closed, source-free conduction + exchange box with constant fluid
/// properties and tight solver tolerances, used for conservation audits.
ScenarioConfig conservation_closed();

/// Gently driven balanced-well scenario with smooth dynamics, used for
/// splitting-order comparisons.
ScenarioConfig smooth_splitting();

std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);  // throws ConfigError if unknown

}  // namespace georos::sim
