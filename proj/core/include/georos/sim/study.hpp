#pragma once

#include <string>
#include <vector>

#include "georos/ode/stability.hpp"
#include "georos/sim/scenario.hpp"
#include "georos/sim/simulation.hpp"

namespace georos::sim {

struct StudyRow {
  std::string scheme;
  double tau_s = 0.0;
  double err_T_rel = 0.0;  // relative L2 over the stacked (T_s, T_f) fields
  double err_p_rel = 0.0;
  double cpu_s = 0.0;
  std::size_t matvecs = 0;
  std::size_t linsolves = 0;
  bool failed = false;
  std::string failure;
  // run-level work detail for efficiency assertions
  std::size_t steps = 0;
  std::size_t newton_iters = 0;
};

struct ConvergenceReport {
  std::string scenario_name;
  std::string reference_scheme = "ros3p";
  double reference_tau_s = 0.0;
  std::vector<StudyRow> rows;
};

/// Runs every (scheme, tau) pair at constant steps against one shared
/// reference solution: ros3p at tau_ref = min(taus)/2 on the same splitting.
/// taus must be sorted descending. Independent runs execute on up to `jobs`
/// threads (0 = serial); rows keep the deterministic input order.
ConvergenceReport convergence_study(const ScenarioConfig& base,
                                    const std::vector<ode::SchemeId>& schemes,
                                    const std::vector<double>& taus_s,
                                    unsigned jobs = 0);

}  // namespace georos::sim
