#pragma once

#include <string>

#include "georos/sim/study.hpp"

namespace georos::sim {

/// Writes results.csv (pinned header, 12 significant digits), scenario.echo
/// (fully resolved configuration) and the three log-log plot images
/// (error vs tau, error vs cpu, cpu vs tau) into run_dir.
void emit_outputs(const ConvergenceReport& report, const std::string& run_dir,
                  const std::string& scenario_echo);

/// The CSV text alone (used for determinism checks). The cpu_s column is the
/// only part that varies between identical runs.
std::string report_csv(const ConvergenceReport& report);

}  // namespace georos::sim
