#include "georos/sim/presets.hpp"

namespace georos::sim {

namespace {

ScenarioConfig heterogeneous_base() {
  ScenarioConfig c;
  c.name = "heterogeneous-3d";
  c.grid = {20, 20, 4, 1000.0, 1000.0, 100.0};
  c.layers = {{"lower", 0.0, 50.0, 0.1, 0.40, 3000.0, 1000.0, 3.0},
              {"upper", 50.0, 100.0, 0.01, 0.20, 2800.0, 850.0, 2.0}};
  c.bulk_compressibility_per_pa = 1e-7;
  c.fluid.conductivity_W_mK = 0.6;
  c.he_W_m3K = 1e4;
  c.gravity_enabled = true;
  c.initial.temperature_base_c = 60.0;
  c.initial.temperature_gradient_c_per_m = 0.3;  // +3 C every 10 m
  c.initial.pressure_mode = PressureInit::Steady;
  c.initial.pin_pressure_pa = 1e7;

  // corner injector and producer columns through the full thickness; the
  // rates keep the porosity law inside (0,1) at this resolution (the full
  // paper-scale rates overpressure single desk cells past the law's domain)
  WellConfig inj;
  inj.control = WellControl::Rate;
  inj.column_ix = 19;
  inj.column_iy = 19;
  inj.rate_m3_per_s = 0.08;
  inj.injection_temperature_c = 10.0;
  WellConfig prod;
  prod.control = WellControl::Rate;
  prod.column_ix = 0;
  prod.column_iy = 0;
  prod.rate_m3_per_s = -0.008;
  c.wells = {inj, prod};

  c.time.final_days = 40.0;
  c.time.step_days = 5.0;
  c.scheme = parse_scheme("erem-krylov");
  c.splitting = Splitting::Trotter;
  c.tol.phi_max_substeps = 20000;
  return c;
}

}  // namespace

ScenarioConfig heterogeneous_3d_desk() { return heterogeneous_base(); }

ScenarioConfig heterogeneous_3d_full() {
  ScenarioConfig c = heterogeneous_base();
  c.name = "heterogeneous-3d-full";
  c.grid = {50, 50, 50, 1000.0, 1000.0, 100.0};
  c.wells[0].column_ix = 49;
  c.wells[0].column_iy = 49;
  return c;
}

ScenarioConfig conservation_closed() {
  ScenarioConfig c;
  c.name = "conservation-closed";
  c.grid = {6, 6, 4, 60.0, 60.0, 40.0};
  c.layers = {{"rock", 0.0, 40.0, 0.05, 0.30, 2800.0, 900.0, 2.5}};
  c.bulk_compressibility_per_pa = 1e-8;
  c.fluid.constant_density_kg_m3 = 1000.0;
  c.fluid.constant_heat_capacity_J_kgC = 4200.0;
  c.he_W_m3K = 1e4;
  c.gravity_enabled = false;
  c.initial.temperature_base_c = 50.0;
  c.initial.temperature_gradient_c_per_m = 0.5;
  c.initial.pressure_mode = PressureInit::Uniform;
  c.initial.uniform_pressure_pa = 1e7;
  c.time.final_days = 100.0;
  c.time.step_days = 1.0;
  c.scheme = parse_scheme("theta1");
  c.splitting = Splitting::Trotter;
  c.tol.newton_tol = 1e-12;
  c.tol.linear_tol = 1e-12;
  c.tol.linear_max_iter = 2000;
  return c;
}

ScenarioConfig smooth_splitting() {
  ScenarioConfig c;
  c.name = "smooth-splitting";
  c.grid = {8, 8, 2, 400.0, 400.0, 40.0};
  c.layers = {{"rock", 0.0, 40.0, 0.1, 0.30, 2800.0, 900.0, 2.5}};
  c.bulk_compressibility_per_pa = 1e-8;
  c.he_W_m3K = 100.0;
  c.gravity_enabled = false;
  c.initial.temperature_base_c = 60.0;
  c.initial.temperature_gradient_c_per_m = 0.0;
  c.initial.pressure_mode = PressureInit::Steady;
  c.initial.pin_pressure_pa = 1e7;

  WellConfig inj;
  inj.control = WellControl::Rate;
  inj.column_ix = 7;
  inj.column_iy = 7;
  inj.rate_m3_per_s = 0.004;
  inj.injection_temperature_c = 40.0;
  WellConfig prod;
  prod.control = WellControl::Rate;
  prod.column_ix = 0;
  prod.column_iy = 0;
  prod.rate_m3_per_s = -0.004;
  c.wells = {inj, prod};

  c.time.final_days = 20.0;
  c.time.step_days = 2.0;
  c.scheme = parse_scheme("ros3p");
  c.splitting = Splitting::Trotter;
  c.tol.newton_tol = 1e-10;
  c.tol.linear_tol = 1e-11;
  c.tol.phi_tol = 1e-9;
  c.tol.leja_tol_a = 1e-9;
  c.tol.leja_tol_r = 1e-9;
  c.tol.phi_max_substeps = 20000;
  return c;
}

std::vector<std::string> preset_names() {
  return {"heterogeneous-3d", "heterogeneous-3d-full", "conservation-closed",
          "smooth-splitting"};
}

ScenarioConfig preset(const std::string& name) {
  if (name == "heterogeneous-3d") return heterogeneous_3d_desk();
  if (name == "heterogeneous-3d-full") return heterogeneous_3d_full();
  if (name == "conservation-closed") return conservation_closed();
  if (name == "smooth-splitting") return smooth_splitting();
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace georos::sim
