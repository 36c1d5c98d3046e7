#include "georos/sim/study.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "georos/linalg/vector_ops.hpp"

namespace georos::sim {

namespace {

double rel_l2(std::span<const double> x, std::span<const double> ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - ref[i];
    num += d * d;
    den += ref[i] * ref[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

ConvergenceReport convergence_study(const ScenarioConfig& base,
                                    const std::vector<ode::SchemeId>& schemes,
                                    const std::vector<double>& taus_s, unsigned jobs) {
  if (schemes.empty()) throw ConfigError("study: no schemes given");
  if (taus_s.empty()) throw ConfigError("study: no step sizes given");
  for (std::size_t i = 0; i + 1 < taus_s.size(); ++i)
    if (taus_s[i] <= taus_s[i + 1])
      throw ConfigError("study: step sizes must be sorted descending");

  ConvergenceReport report;
  report.scenario_name = base.name;
  report.reference_tau_s = taus_s.back() / 2.0;

  // job list: index 0 is the shared reference run
  struct Job {
    ScenarioConfig cfg;
    RunResult result;
    bool failed = false;
    std::string failure;
  };
  std::vector<Job> runs(1 + schemes.size() * taus_s.size());

  auto configure = [&](const ode::SchemeId& scheme, double tau_s) {
    ScenarioConfig c = base;
    c.scheme = scheme;
    c.time.adaptive.enabled = false;
    c.time.step_days = tau_s / kSecondsPerDay;
    return c;
  };

  runs[0].cfg = configure(parse_scheme(report.reference_scheme), report.reference_tau_s);
  {
    std::size_t idx = 1;
    for (const ode::SchemeId& s : schemes)
      for (double tau : taus_s) runs[idx++].cfg = configure(s, tau);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= runs.size()) return;
      try {
        runs[i].result = run_simulation(runs[i].cfg);
      } catch (const std::exception& e) {
        runs[i].failed = true;
        runs[i].failure = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const Job& ref = runs[0];
  if (ref.failed)
    throw NumericalFailure("study: reference run failed: " + ref.failure);
  const std::vector<double> refT = fv::pack_temperature(ref.result.state);

  std::size_t idx = 1;
  for (const ode::SchemeId& s : schemes)
    for (double tau : taus_s) {
      const Job& job = runs[idx++];
      StudyRow row;
      row.scheme = s.label();
      row.tau_s = tau;
      if (job.failed) {
        row.failed = true;
        row.failure = job.failure;
        row.err_T_rel = row.err_p_rel = std::numeric_limits<double>::quiet_NaN();
      } else {
        row.err_T_rel = rel_l2(fv::pack_temperature(job.result.state), refT);
        row.err_p_rel = rel_l2(job.result.state.p, ref.result.state.p);
        row.cpu_s = job.result.diag.cpu_seconds;
        row.matvecs = job.result.diag.work.phi_matvecs;
        row.linsolves = job.result.diag.work.linear_solves;
        row.steps = job.result.diag.steps;
        row.newton_iters = job.result.diag.work.newton_iters;
      }
      report.rows.push_back(std::move(row));
    }
  return report;
}

}  // namespace georos::sim
