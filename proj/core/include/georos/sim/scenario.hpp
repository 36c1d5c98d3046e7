#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "georos/fv/assembly.hpp"
#include "georos/fv/grid.hpp"
#include "georos/ode/stability.hpp"
#include "georos/props/water.hpp"

namespace georos::sim {

constexpr double kSecondsPerDay = 86400.0;
constexpr double kM2PerDarcy = 9.869233e-13;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  std::size_t nx = 1, ny = 1, nz = 1;
  double lx_m = 1.0, ly_m = 1.0, lz_m = 1.0;
};

/// One horizontal rock layer, bounded by elevations above the domain floor.
struct LayerSpec {
  std::string name;
  double z_from_m = 0.0, z_to_m = 0.0;
  double permeability_darcy = 0.0;
  double porosity = 0.0;
  double rock_density_kg_m3 = 0.0;
  double rock_heat_capacity_J_kgK = 0.0;
  double rock_conductivity_W_mK = 0.0;
};

enum class WellControl { Rate, Pressure };
enum class WellApportion { Uniform, PermeabilityWeighted };

/// A vertical line well through the full thickness at column (ix, iy), or an
/// explicit cell list when `cells` is non-empty.
struct WellConfig {
  WellControl control = WellControl::Rate;
  std::size_t column_ix = 0, column_iy = 0;
  std::vector<std::size_t> cells;  // optional explicit cell indices
  double rate_m3_per_s = 0.0;
  double injection_temperature_c = 0.0;
  double bottom_pressure_pa = 0.0;
  WellApportion apportion = WellApportion::PermeabilityWeighted;
};

enum class PressureInit { Uniform, Steady };

struct InitialSpec {
  double temperature_base_c = 60.0;          // at the domain floor (z = 0)
  double temperature_gradient_c_per_m = 0.0; // added per meter of elevation
  PressureInit pressure_mode = PressureInit::Steady;
  double uniform_pressure_pa = 1e7;
  double pin_pressure_pa = 1e7;   // datum for the steady solve
  std::size_t pin_ix = 0, pin_iy = 0, pin_iz = 0;
};

struct AdaptiveSpec {
  bool enabled = false;
  double tol_a = 1e-6;
  double tol_r = 1e-6;
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
  double initial_step_days = 1.0;
  double min_step_days = 1e-6;
};

struct TimeSpec {
  double final_days = 1.0;
  double step_days = 1.0;  // constant-step mode when adaptive is off
  AdaptiveSpec adaptive;
};

struct ToleranceSpec {
  double newton_tol = 1e-6;
  std::size_t newton_max_iter = 25;
  double linear_tol = 1e-6;
  std::size_t linear_max_iter = 500;
  double phi_tol = 1e-6;
  std::size_t krylov_m = 10;
  std::size_t phi_max_substeps = 1000;
  double leja_tol_a = 1e-6;
  double leja_tol_r = 1e-6;
  std::size_t leja_max_degree = 120;
};

enum class Splitting { Trotter, Strang };

struct FluidSpec {
  double conductivity_W_mK = 0.6;
  double compressibility_per_pa = 4.5e-10;
  double constant_density_kg_m3 = 0.0;       // <= 0: correlation
  double constant_heat_capacity_J_kgC = 0.0; // <= 0: correlation
};

struct ScenarioConfig {
  std::string name = "scenario";
  GridSpec grid;
  std::vector<LayerSpec> layers;
  double bulk_compressibility_per_pa = 0.0;
  FluidSpec fluid;
  double he_W_m3K = 1e4;
  bool gravity_enabled = true;
  double gravity_gz_m_s2 = -9.81;
  double heat_source_rock_W_m3 = 0.0;
  double heat_source_fluid_W_m3 = 0.0;
  InitialSpec initial;
  std::vector<WellConfig> wells;
  TimeSpec time;
  ode::SchemeId scheme;
  Splitting splitting = Splitting::Trotter;
  ToleranceSpec tol;

  /// Throws ConfigError on inconsistent input (layers must tile [0, lz]).
  void validate() const;
};

/// Scenario materialized on its grid: per-cell rock fields, fluid model,
/// well cells with apportioned rates.
struct CompiledScenario {
  ScenarioConfig config;
  fv::StructuredGrid grid;
  fv::RockField rock;
  props::FluidModel fluid;
  fv::WellSet wells;
  std::size_t pin_cell = 0;

  fv::MediumModel medium() const;
  /// Initial temperature profile (same for rock and fluid).
  std::vector<double> initial_temperature() const;
};

CompiledScenario compile(const ScenarioConfig& cfg);

ScenarioConfig parse_scenario_json(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);
/// Fully-resolved configuration echo (every default materialized).
std::string echo_scenario_json(const ScenarioConfig& cfg);

/// Scheme names used on the CLI and in reports: theta1, theta0.5,
/// erem-krylov, erem-leja, rosm1, rosm0.5, ros2, ros3p.
ode::SchemeId parse_scheme(const std::string& label);

}  // namespace georos::sim
