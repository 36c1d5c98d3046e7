#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "georos/linalg/vector_ops.hpp"
#include "georos/sim/initial_pressure.hpp"
#include "georos/sim/outputs.hpp"
#include "georos/sim/presets.hpp"
#include "georos/sim/scenario.hpp"
#include "georos/sim/simulation.hpp"
#include "georos/sim/study.hpp"
#include "oracles.hpp"

using namespace georos;
using namespace georos::sim;

namespace {

ScenarioConfig tiny_box() {
  ScenarioConfig c;
  c.name = "tiny-box";
  c.grid = {3, 3, 2, 30.0, 30.0, 20.0};
  c.layers = {{"rock", 0.0, 20.0, 0.1, 0.3, 2800.0, 900.0, 2.5}};
  c.bulk_compressibility_per_pa = 1e-8;
  c.he_W_m3K = 100.0;
  c.gravity_enabled = false;
  c.initial.temperature_base_c = 50.0;
  c.initial.temperature_gradient_c_per_m = 0.0;
  c.initial.pressure_mode = PressureInit::Uniform;
  c.initial.uniform_pressure_pa = 1e7;
  c.time.final_days = 2.0;
  c.time.step_days = 1.0;
  c.scheme = parse_scheme("theta1");
  return c;
}

}  // namespace

TEST_CASE("scheme label parsing") {
  CHECK(parse_scheme("theta1").kind == ode::SchemeKind::ThetaEuler);
  CHECK(parse_scheme("theta0.5").theta == 0.5);
  CHECK(parse_scheme("erem-krylov").backend == ode::PhiBackendKind::Krylov);
  CHECK(parse_scheme("erem-leja").backend == ode::PhiBackendKind::Leja);
  CHECK(parse_scheme("rosm1").gamma == 1.0);
  CHECK(parse_scheme("rosm0.5").gamma == 0.5);
  CHECK(parse_scheme("ros2").kind == ode::SchemeKind::Ros2_1);
  CHECK(parse_scheme("ros3p").kind == ode::SchemeKind::Ros3p);
  CHECK_THROWS_AS(parse_scheme("leapfrog"), ConfigError);
  // round trip through the label
  for (const char* name :
       {"theta1", "theta0.5", "erem-krylov", "erem-leja", "rosm1", "rosm0.5", "ros2",
        "ros3p"})
    CHECK(parse_scheme(name).label() == name);
}

TEST_CASE("scenario JSON round trip and validation") {
  SUBCASE("echo/parse round trip is the identity") {
    const ScenarioConfig a = heterogeneous_3d_desk();
    const std::string echo1 = echo_scenario_json(a);
    const ScenarioConfig b = parse_scenario_json(echo1);
    CHECK(echo_scenario_json(b) == echo1);
  }
  SUBCASE("parse errors carry ConfigError") {
    CHECK_THROWS_AS(parse_scenario_json("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_scenario_json("{}"), ConfigError);
  }
  SUBCASE("layer gaps are rejected") {
    ScenarioConfig c = tiny_box();
    c.layers = {{"a", 0.0, 8.0, 0.1, 0.3, 2800.0, 900.0, 2.5},
                {"b", 12.0, 20.0, 0.1, 0.3, 2800.0, 900.0, 2.5}};
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
  SUBCASE("adaptive stepping requires an embedded scheme") {
    ScenarioConfig c = tiny_box();
    c.time.adaptive.enabled = true;
    c.scheme = parse_scheme("erem-krylov");
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.scheme = parse_scheme("ros3p");
    CHECK_NOTHROW(c.validate());
  }
  SUBCASE("well outside the grid is rejected") {
    ScenarioConfig c = tiny_box();
    WellConfig w;
    w.column_ix = 99;
    w.rate_m3_per_s = 1.0;
    c.wells = {w};
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
  SUBCASE("scenario files on disk match the presets") {
    const std::string dir = GEOROS_SCENARIO_DIR;
    for (const std::string name : {"heterogeneous_3d", "conservation_closed"}) {
      const ScenarioConfig file = load_scenario_file(dir + "/" + name + ".json");
      const ScenarioConfig built =
          preset(name == "heterogeneous_3d" ? "heterogeneous-3d" : "conservation-closed");
      CHECK(echo_scenario_json(file) == echo_scenario_json(built));
    }
  }
}

TEST_CASE("initial_pressure") {
  SUBCASE("no wells, no gravity: uniform at the pin value") {
    ScenarioConfig c = tiny_box();
    c.initial.pressure_mode = PressureInit::Steady;
    c.initial.pin_pressure_pa = 3.3e6;
    const CompiledScenario cs = compile(c);
    const std::vector<double> T0 = cs.initial_temperature();
    const std::vector<double> p = initial_pressure(cs, T0);
    for (double v : p) CHECK(v == doctest::Approx(3.3e6).epsilon(1e-9));
  }
  SUBCASE("gravity with constant density: discrete hydrostatic profile") {
    ScenarioConfig c = tiny_box();
    c.grid = {2, 2, 6, 20.0, 20.0, 60.0};
    c.layers = {{"rock", 0.0, 60.0, 0.1, 0.3, 2800.0, 900.0, 2.5}};
    c.gravity_enabled = true;
    c.fluid.constant_density_kg_m3 = 1000.0;
    c.fluid.constant_heat_capacity_J_kgC = 4200.0;
    c.initial.pressure_mode = PressureInit::Steady;
    c.initial.pin_pressure_pa = 1e7;
    const CompiledScenario cs = compile(c);
    const std::vector<double> T0 = cs.initial_temperature();
    const std::vector<double> p = initial_pressure(cs, T0);
    // flux residual: velocity must vanish
    const std::size_t n = cs.grid.cell_count();
    std::vector<double> mu(n), rho(n);
    for (std::size_t i = 0; i < n; ++i) {
      mu[i] = cs.fluid.viscosity(T0[i]);
      rho[i] = cs.fluid.density(T0[i]);
    }
    const fv::VelocityField vel =
        fv::darcy_velocity(cs.grid, cs.rock.perm_m2, mu, rho, p, -9.81);
    for (double q : vel.face_flux) CHECK(std::fabs(q) < 1e-10);
    // pressure decreases with elevation
    CHECK(p[cs.grid.index(0, 0, 0)] > p[cs.grid.index(0, 0, 5)]);
  }
  SUBCASE("balanced wells: injector pressure above producer pressure") {
    ScenarioConfig c = tiny_box();
    c.initial.pressure_mode = PressureInit::Steady;
    WellConfig inj;
    inj.column_ix = 2;
    inj.column_iy = 2;
    inj.rate_m3_per_s = 1e-3;
    inj.injection_temperature_c = 30.0;
    WellConfig prod;
    prod.column_ix = 0;
    prod.column_iy = 0;
    prod.rate_m3_per_s = -1e-3;
    c.wells = {inj, prod};
    const CompiledScenario cs = compile(c);
    const std::vector<double> T0 = cs.initial_temperature();
    const std::vector<double> p = initial_pressure(cs, T0);
    CHECK(p[cs.grid.index(2, 2, 0)] > p[cs.grid.index(0, 0, 0)]);
  }
  SUBCASE("unbalanced wells fall back to the natural state with a log line") {
    ScenarioConfig c = tiny_box();
    c.initial.pressure_mode = PressureInit::Steady;
    WellConfig inj;
    inj.column_ix = 2;
    inj.column_iy = 2;
    inj.rate_m3_per_s = 1e-3;
    c.wells = {inj};
    const CompiledScenario cs = compile(c);
    const std::vector<double> T0 = cs.initial_temperature();
    std::vector<std::string> log;
    const std::vector<double> p = initial_pressure(cs, T0, &log);
    REQUIRE(!log.empty());
    CHECK(log[0].find("do not balance") != std::string::npos);
    // natural state without gravity: uniform
    for (double v : p) CHECK(v == doctest::Approx(1e7).epsilon(1e-9));
  }
}

TEST_CASE("run_simulation") {
  SUBCASE("zero-flow uniform scenario is a fixed point") {
    const ScenarioConfig c = tiny_box();
    const RunResult r = run_simulation(c);
    for (double T : r.state.T_s) CHECK(T == doctest::Approx(50.0).epsilon(1e-12));
    for (double T : r.state.T_f) CHECK(T == doctest::Approx(50.0).epsilon(1e-12));
    for (double p : r.state.p) CHECK(p == doctest::Approx(1e7).epsilon(1e-12));
    CHECK(r.diag.steps == 2);
  }
  SUBCASE("bit-identical reruns") {
    ScenarioConfig c = tiny_box();
    WellConfig inj;
    inj.column_ix = 2;
    inj.column_iy = 2;
    inj.rate_m3_per_s = 5e-4;
    inj.injection_temperature_c = 20.0;
    WellConfig prod;
    prod.column_ix = 0;
    prod.column_iy = 0;
    prod.rate_m3_per_s = -5e-4;
    c.wells = {inj, prod};
    c.initial.pressure_mode = PressureInit::Steady;
    c.scheme = parse_scheme("erem-krylov");
    const RunResult a = run_simulation(c);
    const RunResult b = run_simulation(c);
    CHECK(a.state.T_f == b.state.T_f);
    CHECK(a.state.T_s == b.state.T_s);
    CHECK(a.state.p == b.state.p);
  }
  SUBCASE("observer sees the initial state and every step") {
    const ScenarioConfig c = tiny_box();
    std::size_t calls = 0;
    double last_t = -1.0;
    const RunResult r = run_simulation(c, [&](const fv::StateFields&, double t) {
      ++calls;
      CHECK(t > last_t);
      last_t = t;
    });
    CHECK(calls == r.diag.steps + 1);
  }
  SUBCASE("strang splitting runs and stays finite") {
    ScenarioConfig c = smooth_splitting();
    c.time.final_days = 4.0;
    c.time.step_days = 2.0;
    c.splitting = Splitting::Strang;
    const RunResult r = run_simulation(c);
    CHECK(linalg::all_finite(r.state.T_f));
    CHECK(linalg::all_finite(r.state.p));
  }
  SUBCASE("adaptive run accepts and finishes") {
    ScenarioConfig c = smooth_splitting();
    c.time.final_days = 4.0;
    c.scheme = parse_scheme("ros3p");
    c.time.adaptive.enabled = true;
    c.time.adaptive.tol_a = 1e-4;
    c.time.adaptive.tol_r = 1e-4;
    c.time.adaptive.initial_step_days = 0.5;
    const RunResult r = run_simulation(c);
    CHECK(r.diag.steps >= 2);
    CHECK(r.times_s.back() == doctest::Approx(4.0 * kSecondsPerDay).epsilon(1e-12));
  }
}

TEST_CASE("convergence_study") {
  ScenarioConfig base = smooth_splitting();
  base.time.final_days = 4.0;

  SUBCASE("duplicate scheme rows are identical (determinism)") {
    const std::vector<ode::SchemeId> schemes{parse_scheme("rosm1"), parse_scheme("rosm1")};
    const std::vector<double> taus{2.0 * kSecondsPerDay, 1.0 * kSecondsPerDay};
    const ConvergenceReport rep = convergence_study(base, schemes, taus, 2);
    REQUIRE(rep.rows.size() == 4);
    CHECK(rep.rows[0].err_T_rel == rep.rows[2].err_T_rel);
    CHECK(rep.rows[1].err_T_rel == rep.rows[3].err_T_rel);
    CHECK(rep.reference_tau_s == doctest::Approx(0.5 * kSecondsPerDay));
  }
  SUBCASE("taus must be sorted descending") {
    const std::vector<ode::SchemeId> schemes{parse_scheme("rosm1")};
    CHECK_THROWS_AS(convergence_study(
                        base, schemes,
                        std::vector<double>{1.0 * kSecondsPerDay, 2.0 * kSecondsPerDay}, 1),
                    ConfigError);
  }
}

TEST_CASE("emit_outputs") {
  namespace fs = std::filesystem;
  const std::string dir = (fs::temp_directory_path() / "georos_outputs_test").string();
  fs::remove_all(dir);

  SUBCASE("empty report produces a header-only CSV") {
    ConvergenceReport rep;
    rep.scenario_name = "empty";
    emit_outputs(rep, dir, "{}\n");
    std::ifstream csv(dir + "/results.csv");
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "scheme,tau_s,err_T_rel,err_p_rel,cpu_s,matvecs,linsolves");
    CHECK(!std::getline(csv, line));
    CHECK(fs::exists(dir + "/scenario.echo"));
    CHECK(fs::exists(dir + "/err_vs_tau.svg"));
    CHECK(fs::exists(dir + "/err_vs_cpu.svg"));
    CHECK(fs::exists(dir + "/cpu_vs_tau.svg"));
  }
  SUBCASE("one row round-trips through the CSV text") {
    ConvergenceReport rep;
    rep.scenario_name = "one";
    StudyRow row;
    row.scheme = "ros2";
    row.tau_s = 864000.0;
    row.err_T_rel = 1.234567890123e-5;
    row.err_p_rel = 9.87e-7;
    row.cpu_s = 0.25;
    row.matvecs = 11;
    row.linsolves = 22;
    rep.rows.push_back(row);
    const std::string csv = report_csv(rep);
    double tau, errT, errP, cpu;
    unsigned long mv, ls;
    char scheme[16];
    const int got = std::sscanf(csv.c_str(), "scheme,tau_s,err_T_rel,err_p_rel,cpu_s,matvecs,linsolves\n%15[^,],%lf,%lf,%lf,%lf,%lu,%lu",
                                scheme, &tau, &errT, &errP, &cpu, &mv, &ls);
    CHECK(got == 7);
    CHECK(std::string(scheme) == "ros2");
    CHECK(tau == 864000.0);
    CHECK(errT == doctest::Approx(1.234567890123e-5).epsilon(1e-12));
    CHECK(mv == 11);
    CHECK(ls == 22);
  }
}
