#include "georos/sim/outputs.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "georos/sim/svg_plot.hpp"

namespace georos::sim {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string report_csv(const ConvergenceReport& report) {
  std::string csv = "scheme,tau_s,err_T_rel,err_p_rel,cpu_s,matvecs,linsolves\n";
  for (const StudyRow& r : report.rows) {
    csv += r.scheme + "," + num(r.tau_s) + "," + num(r.err_T_rel) + "," +
           num(r.err_p_rel) + "," + num(r.cpu_s) + "," + std::to_string(r.matvecs) + "," +
           std::to_string(r.linsolves) + "\n";
  }
  return csv;
}

void emit_outputs(const ConvergenceReport& report, const std::string& run_dir,
                  const std::string& scenario_echo) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(run_dir, ec);
  if (ec) throw std::runtime_error("emit_outputs: cannot create '" + run_dir + "'");

  {
    std::ofstream csv(run_dir + "/results.csv");
    if (!csv) throw std::runtime_error("emit_outputs: cannot write results.csv in '" +
                                       run_dir + "'");
    csv << report_csv(report);
  }
  {
    std::ofstream echo(run_dir + "/scenario.echo");
    if (!echo) throw std::runtime_error("emit_outputs: cannot write scenario.echo in '" +
                                        run_dir + "'");
    echo << scenario_echo;
  }

  // group rows per scheme for the plot series
  std::map<std::string, PlotSeries> err_tau, err_cpu, cpu_tau;
  for (const StudyRow& r : report.rows) {
    if (r.failed) continue;
    auto& a = err_tau[r.scheme];
    a.name = r.scheme;
    a.x.push_back(r.tau_s);
    a.y.push_back(r.err_T_rel);
    auto& b = err_cpu[r.scheme];
    b.name = r.scheme;
    b.x.push_back(r.cpu_s);
    b.y.push_back(r.err_T_rel);
    auto& c = cpu_tau[r.scheme];
    c.name = r.scheme;
    c.x.push_back(r.tau_s);
    c.y.push_back(r.cpu_s);
  }
  auto values = [](const std::map<std::string, PlotSeries>& m) {
    std::vector<PlotSeries> v;
    for (const auto& [_, s] : m) v.push_back(s);
    return v;
  };
  write_loglog_svg(run_dir + "/err_vs_tau.svg",
                   report.scenario_name + ": temperature error vs step size",
                   "tau [s]", "relative L2 error", values(err_tau));
  write_loglog_svg(run_dir + "/err_vs_cpu.svg",
                   report.scenario_name + ": temperature error vs CPU time",
                   "cpu [s]", "relative L2 error", values(err_cpu));
  write_loglog_svg(run_dir + "/cpu_vs_tau.svg",
                   report.scenario_name + ": CPU time vs step size",
                   "tau [s]", "cpu [s]", values(cpu_tau));
}

}  // namespace georos::sim
