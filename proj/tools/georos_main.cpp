// georos: geothermal reservoir flow/heat simulator with exponential
// Rosenbrock-Euler and Rosenbrock-type time integration.
//
// Subcommands:
//   simulate <scenario.json> [--out DIR]     run one scenario
//   study <scenario.json> --schemes L --taus L [--out DIR]
//                                             convergence/efficiency sweep
//   selftest                                  quick oracle/property checks
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "georos/sim/outputs.hpp"
#include "georos/sim/presets.hpp"
#include "georos/sim/scenario.hpp"
#include "georos/sim/simulation.hpp"
#include "georos/sim/study.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

unsigned parallel_jobs() {
  if (const char* env = std::getenv("GEOROS_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

georos::sim::ScenarioConfig load(const std::string& path) {
  // preset: prefix resolves built-in scenarios by name
  if (path.rfind("preset:", 0) == 0) return georos::sim::preset(path.substr(7));
  return georos::sim::load_scenario_file(path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir) {
  using namespace georos::sim;
  const ScenarioConfig cfg = load(scenario_path);
  const RunResult res = run_simulation(cfg);

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream log(out_dir + "/run.log");
    for (const std::string& line : res.diag.log) log << line << "\n";
  }
  {
    std::ofstream echo(out_dir + "/scenario.echo");
    echo << echo_scenario_json(cfg);
  }
  {
    // final state as CSV: cell, T_s, T_f, p
    std::ofstream st(out_dir + "/final_state.csv");
    st << "cell,T_s_C,T_f_C,p_pa\n";
    char buf[128];
    for (std::size_t c = 0; c < res.state.p.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g,%.12g\n", c, res.state.T_s[c],
                    res.state.T_f[c], res.state.p[c]);
      st << buf;
    }
  }
  std::printf("simulate: %zu steps, %.3f s stepping, %llu property clamps -> %s\n",
              res.diag.steps, res.diag.cpu_seconds,
              static_cast<unsigned long long>(res.diag.clamp_warnings), out_dir.c_str());
  return 0;
}

int cmd_study(const std::string& scenario_path, const std::string& schemes_arg,
              const std::string& taus_arg, const std::string& out_dir) {
  using namespace georos::sim;
  const ScenarioConfig cfg = load(scenario_path);

  std::vector<georos::ode::SchemeId> schemes;
  for (const std::string& s : split_list(schemes_arg)) schemes.push_back(parse_scheme(s));
  std::vector<double> taus_s;
  for (const std::string& t : split_list(taus_arg))
    taus_s.push_back(std::stod(t) * kSecondsPerDay);  // CLI takes days

  const ConvergenceReport rep = convergence_study(cfg, schemes, taus_s, parallel_jobs());
  emit_outputs(rep, out_dir, echo_scenario_json(cfg));

  std::size_t failed = 0;
  for (const StudyRow& r : rep.rows) failed += r.failed ? 1 : 0;
  std::printf("study: %zu rows (%zu failed) -> %s/results.csv\n", rep.rows.size(), failed,
              out_dir.c_str());
  return failed == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geothermal reservoir simulator (exponential Rosenbrock-Euler and "
               "Rosenbrock-type time integrators)"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = "out";
  std::string schemes = "theta1,theta0.5,erem-krylov,erem-leja,rosm1,rosm0.5,ros2,ros3p";
  std::string taus;

  CLI::App* sim = app.add_subcommand("simulate", "run one scenario");
  sim->add_option("scenario", scenario_path,
                  "scenario JSON file (or preset:<name>)")->required();
  sim->add_option("--out", out_dir, "output directory");

  CLI::App* study = app.add_subcommand("study", "convergence/efficiency sweep");
  study->add_option("scenario", scenario_path,
                    "scenario JSON file (or preset:<name>)")->required();
  study->add_option("--schemes", schemes, "comma-separated scheme list");
  study->add_option("--taus", taus, "comma-separated step sizes in days")->required();
  study->add_option("--out", out_dir, "output directory");

  CLI::App* self = app.add_subcommand("selftest", "run the oracle/property checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(scenario_path, out_dir);
    if (study->parsed()) return cmd_study(scenario_path, schemes, taus, out_dir);
    if (self->parsed()) return run_selftest() == 0 ? 0 : 1;
  } catch (const georos::sim::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const georos::sim::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
