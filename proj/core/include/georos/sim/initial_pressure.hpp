#pragma once

#include <span>
#include <string>
#include <vector>

#include "georos/sim/scenario.hpp"

namespace georos::sim {

/// Steady-state pressure with water properties at the initial temperature:
/// discrete divergence of rho_f K/mu (grad p - rho_f g) plus sources equals
/// zero, with the nullspace pinned at the configured datum cell. Rate wells
/// enter the steady balance only when their rates cancel; an unbalanced well
/// set has no steady state, so the natural (no-well) state is used and the
/// imbalance is logged. Pressure wells act as Dirichlet rows.
std::vector<double> initial_pressure(const CompiledScenario& cs,
                                     std::span<const double> T_init,
                                     std::vector<std::string>* log = nullptr);

}  // namespace georos::sim
