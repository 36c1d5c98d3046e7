#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "georos/fv/assembly.hpp"
#include "georos/ode/steppers.hpp"
#include "georos/sim/scenario.hpp"

namespace georos::sim {

/// Raised when the step-failure cascade hits the minimum step size.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunDiagnostics {
  std::size_t steps = 0;
  std::size_t step_rejections = 0;
  ode::WorkCounters work;
  std::uint64_t clamp_warnings = 0;
  double cpu_seconds = 0.0;  // wall clock around the stepping loop only
  std::vector<std::string> log;
};

struct RunResult {
  fv::StateFields state;
  std::vector<double> times_s;
  RunDiagnostics diag;
};

/// Called with the state at t = 0 and after every accepted macro step.
using StepObserver = std::function<void(const fv::StateFields&, double t_s)>;

/// Sequential-splitting simulation: per step the temperature system is
/// advanced with pressure frozen, then the pressure system with the new
/// temperature frozen (Trotter), or in the symmetric half/full/half order
/// (Strang); the Darcy velocity is refreshed after every pressure update.
RunResult run_simulation(const ScenarioConfig& cfg, const StepObserver& observer = {});

}  // namespace georos::sim
