#include "georos/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace georos::sim {

using nlohmann::json;

void ScenarioConfig::validate() const {
  if (grid.nx == 0 || grid.ny == 0 || grid.nz == 0)
    throw ConfigError("grid: zero cell count");
  if (grid.lx_m <= 0 || grid.ly_m <= 0 || grid.lz_m <= 0)
    throw ConfigError("grid: nonpositive extent");
  if (time.final_days <= 0) throw ConfigError("time: final_days must be positive");
  if (!time.adaptive.enabled && time.step_days <= 0)
    throw ConfigError("time: step_days must be positive in constant-step mode");
  if (time.adaptive.enabled && scheme.kind != ode::SchemeKind::Ros2_1 &&
      scheme.kind != ode::SchemeKind::Ros3p)
    throw ConfigError("time: adaptive stepping needs an embedded scheme (ros2 or ros3p)");
  if (layers.empty()) throw ConfigError("layers: at least one layer required");

  // layers must tile [0, lz] without gaps or overlap
  auto sorted = layers;
  std::sort(sorted.begin(), sorted.end(),
            [](const LayerSpec& a, const LayerSpec& b) { return a.z_from_m < b.z_from_m; });
  const double eps = 1e-9 * grid.lz_m;
  if (std::abs(sorted.front().z_from_m) > eps)
    throw ConfigError("layers: must start at z = 0");
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (std::abs(sorted[i].z_to_m - sorted[i + 1].z_from_m) > eps)
      throw ConfigError("layers: gap or overlap at z = " + std::to_string(sorted[i].z_to_m));
  if (std::abs(sorted.back().z_to_m - grid.lz_m) > eps)
    throw ConfigError("layers: must end at z = lz");
  for (const LayerSpec& l : layers) {
    if (l.porosity <= 0.0 || l.porosity >= 1.0)
      throw ConfigError("layer " + l.name + ": porosity must lie in (0,1)");
    if (l.permeability_darcy <= 0.0)
      throw ConfigError("layer " + l.name + ": permeability must be positive");
    if (l.rock_density_kg_m3 <= 0.0 || l.rock_heat_capacity_J_kgK <= 0.0 ||
        l.rock_conductivity_W_mK <= 0.0)
      throw ConfigError("layer " + l.name + ": rock properties must be positive");
  }
  for (const WellConfig& w : wells) {
    if (w.cells.empty() && (w.column_ix >= grid.nx || w.column_iy >= grid.ny))
      throw ConfigError("well: column outside grid");
    if (w.control == WellControl::Rate && w.rate_m3_per_s == 0.0)
      throw ConfigError("well: rate wells need a nonzero rate");
  }
  if (initial.pin_ix >= grid.nx || initial.pin_iy >= grid.ny || initial.pin_iz >= grid.nz)
    throw ConfigError("initial: pin cell outside grid");
  scheme.validate();
}

fv::MediumModel CompiledScenario::medium() const {
  fv::MediumModel mm;
  mm.grid = &grid;
  mm.rock = &rock;
  mm.fluid = &fluid;
  mm.wells = &wells;
  mm.sources.q_s_W_m3 = config.heat_source_rock_W_m3;
  mm.sources.q_f_W_m3 = config.heat_source_fluid_W_m3;
  mm.he_W_m3K = config.he_W_m3K;
  mm.gz = config.gravity_enabled ? config.gravity_gz_m_s2 : 0.0;
  return mm;
}

std::vector<double> CompiledScenario::initial_temperature() const {
  std::vector<double> T(grid.cell_count());
  for (std::size_t c = 0; c < T.size(); ++c)
    T[c] = config.initial.temperature_base_c +
           config.initial.temperature_gradient_c_per_m * grid.cell_center_z(c);
  return T;
}

CompiledScenario compile(const ScenarioConfig& cfg) {
  cfg.validate();
  CompiledScenario cs;
  cs.config = cfg;
  cs.grid = fv::StructuredGrid::uniform(cfg.grid.nx, cfg.grid.ny, cfg.grid.nz,
                                        cfg.grid.lx_m, cfg.grid.ly_m, cfg.grid.lz_m);
  const std::size_t n = cs.grid.cell_count();

  cs.rock.perm_m2.resize(n);
  cs.rock.phi0.resize(n);
  cs.rock.rho_s.resize(n);
  cs.rock.c_ps.resize(n);
  cs.rock.k_s.resize(n);
  cs.rock.alpha_b_per_pa = cfg.bulk_compressibility_per_pa;
  // refined to the computed initial field before stepping starts
  cs.rock.p0_pa.assign(n, cfg.initial.uniform_pressure_pa);

  for (std::size_t c = 0; c < n; ++c) {
    const double z = cs.grid.cell_center_z(c);
    const LayerSpec* layer = nullptr;
    for (const LayerSpec& l : cfg.layers)
      if (z >= l.z_from_m && z <= l.z_to_m) {
        layer = &l;
        break;
      }
    if (!layer) throw ConfigError("no layer covers z = " + std::to_string(z));
    cs.rock.perm_m2[c] = layer->permeability_darcy * kM2PerDarcy;
    cs.rock.phi0[c] = layer->porosity;
    cs.rock.rho_s[c] = layer->rock_density_kg_m3;
    cs.rock.c_ps[c] = layer->rock_heat_capacity_J_kgK;
    cs.rock.k_s[c] = layer->rock_conductivity_W_mK;
  }

  cs.fluid.conductivity_W_mK = cfg.fluid.conductivity_W_mK;
  cs.fluid.compressibility_per_pa = cfg.fluid.compressibility_per_pa;
  cs.fluid.constant_density = cfg.fluid.constant_density_kg_m3;
  cs.fluid.constant_heat_capacity = cfg.fluid.constant_heat_capacity_J_kgC;

  for (const WellConfig& w : cfg.wells) {
    std::vector<std::size_t> cells = w.cells;
    if (cells.empty())
      for (std::size_t k = 0; k < cs.grid.nz(); ++k)
        cells.push_back(cs.grid.index(w.column_ix, w.column_iy, k));

    if (w.control == WellControl::Pressure) {
      fv::Well fw;
      fw.kind = fv::WellKind::Pressure;
      fw.cells = cells;
      fw.bottom_pressure_pa = w.bottom_pressure_pa;
      cs.wells.wells.push_back(std::move(fw));
      continue;
    }
    // rate well: apportion over the cells, one fv::Well per cell
    std::vector<double> weight(cells.size(), 1.0);
    if (w.apportion == WellApportion::PermeabilityWeighted)
      for (std::size_t i = 0; i < cells.size(); ++i) weight[i] = cs.rock.perm_m2[cells[i]];
    double wsum = 0.0;
    for (double x : weight) wsum += x;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      fv::Well fw;
      fw.kind = fv::WellKind::Rate;
      fw.cells = {cells[i]};
      fw.rate_m3_per_s = w.rate_m3_per_s * weight[i] / wsum;
      fw.injection_T_c = w.injection_temperature_c;
      cs.wells.wells.push_back(std::move(fw));
    }
  }

  cs.pin_cell = cs.grid.index(cfg.initial.pin_ix, cfg.initial.pin_iy, cfg.initial.pin_iz);
  return cs;
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (j.contains(key)) return j.at(key).get<T>();
  return fallback;
}

}  // namespace

ode::SchemeId parse_scheme(const std::string& label) {
  ode::SchemeId s;
  if (label.rfind("theta", 0) == 0) {
    s.kind = ode::SchemeKind::ThetaEuler;
    s.theta = std::stod(label.substr(5));
    return s;
  }
  if (label == "erem-krylov" || label == "erem") {
    s.kind = ode::SchemeKind::Erem;
    s.backend = ode::PhiBackendKind::Krylov;
    return s;
  }
  if (label == "erem-leja") {
    s.kind = ode::SchemeKind::Erem;
    s.backend = ode::PhiBackendKind::Leja;
    return s;
  }
  if (label.rfind("rosm", 0) == 0) {
    s.kind = ode::SchemeKind::Rosm;
    s.gamma = std::stod(label.substr(4));
    return s;
  }
  if (label == "ros2") {
    s.kind = ode::SchemeKind::Ros2_1;
    return s;
  }
  if (label == "ros3p") {
    s.kind = ode::SchemeKind::Ros3p;
    return s;
  }
  throw ConfigError("unknown scheme '" + label + "'");
}

ScenarioConfig parse_scenario_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario parse error: ") + e.what());
  }
  try {
    ScenarioConfig c;
    c.name = get_or<std::string>(j, "name", "scenario");

    const json& g = j.at("grid");
    c.grid.nx = g.at("nx").get<std::size_t>();
    c.grid.ny = g.at("ny").get<std::size_t>();
    c.grid.nz = g.at("nz").get<std::size_t>();
    c.grid.lx_m = g.at("lx_m").get<double>();
    c.grid.ly_m = g.at("ly_m").get<double>();
    c.grid.lz_m = g.at("lz_m").get<double>();

    for (const json& lj : j.at("layers")) {
      LayerSpec l;
      l.name = get_or<std::string>(lj, "name", "layer");
      l.z_from_m = lj.at("z_from_m").get<double>();
      l.z_to_m = lj.at("z_to_m").get<double>();
      l.permeability_darcy = lj.at("permeability_darcy").get<double>();
      l.porosity = lj.at("porosity").get<double>();
      l.rock_density_kg_m3 = lj.at("rock_density_kg_m3").get<double>();
      l.rock_heat_capacity_J_kgK = lj.at("rock_heat_capacity_J_kgK").get<double>();
      l.rock_conductivity_W_mK = lj.at("rock_conductivity_W_mK").get<double>();
      c.layers.push_back(l);
    }

    if (j.contains("rock"))
      c.bulk_compressibility_per_pa =
          get_or<double>(j.at("rock"), "bulk_compressibility_per_Pa", 0.0);

    if (j.contains("fluid")) {
      const json& f = j.at("fluid");
      c.fluid.conductivity_W_mK = get_or<double>(f, "conductivity_W_mK", 0.6);
      c.fluid.compressibility_per_pa = get_or<double>(f, "compressibility_per_Pa", 4.5e-10);
      c.fluid.constant_density_kg_m3 = get_or<double>(f, "constant_density_kg_m3", 0.0);
      c.fluid.constant_heat_capacity_J_kgC =
          get_or<double>(f, "constant_heat_capacity_J_kgC", 0.0);
    }

    c.he_W_m3K = get_or<double>(j, "he_W_m3K", 1e4);
    if (j.contains("gravity")) {
      c.gravity_enabled = get_or<bool>(j.at("gravity"), "enabled", true);
      c.gravity_gz_m_s2 = get_or<double>(j.at("gravity"), "gz_m_s2", -9.81);
    }
    if (j.contains("heat_sources")) {
      c.heat_source_rock_W_m3 = get_or<double>(j.at("heat_sources"), "rock_W_m3", 0.0);
      c.heat_source_fluid_W_m3 = get_or<double>(j.at("heat_sources"), "fluid_W_m3", 0.0);
    }

    if (j.contains("initial")) {
      const json& ij = j.at("initial");
      c.initial.temperature_base_c = get_or<double>(ij, "temperature_base_C", 60.0);
      c.initial.temperature_gradient_c_per_m =
          get_or<double>(ij, "temperature_gradient_C_per_m", 0.0);
      const std::string mode = get_or<std::string>(ij, "pressure_mode", "steady");
      if (mode == "steady")
        c.initial.pressure_mode = PressureInit::Steady;
      else if (mode == "uniform")
        c.initial.pressure_mode = PressureInit::Uniform;
      else
        throw ConfigError("initial.pressure_mode must be 'steady' or 'uniform'");
      c.initial.uniform_pressure_pa = get_or<double>(ij, "uniform_pressure_pa", 1e7);
      c.initial.pin_pressure_pa = get_or<double>(ij, "pin_pressure_pa", 1e7);
      c.initial.pin_ix = get_or<std::size_t>(ij, "pin_ix", 0);
      c.initial.pin_iy = get_or<std::size_t>(ij, "pin_iy", 0);
      c.initial.pin_iz = get_or<std::size_t>(ij, "pin_iz", 0);
    }

    if (j.contains("wells"))
      for (const json& wj : j.at("wells")) {
        WellConfig w;
        const std::string kind = get_or<std::string>(wj, "kind", "rate");
        w.control = kind == "pressure" ? WellControl::Pressure : WellControl::Rate;
        w.column_ix = get_or<std::size_t>(wj, "column_ix", 0);
        w.column_iy = get_or<std::size_t>(wj, "column_iy", 0);
        if (wj.contains("cells")) w.cells = wj.at("cells").get<std::vector<std::size_t>>();
        w.rate_m3_per_s = get_or<double>(wj, "rate_m3_per_s", 0.0);
        w.injection_temperature_c = get_or<double>(wj, "injection_temperature_C", 0.0);
        w.bottom_pressure_pa = get_or<double>(wj, "bottom_pressure_pa", 0.0);
        const std::string app = get_or<std::string>(wj, "apportion", "permeability");
        w.apportion = app == "uniform" ? WellApportion::Uniform
                                       : WellApportion::PermeabilityWeighted;
        c.wells.push_back(w);
      }

    const json& tj = j.at("time");
    c.time.final_days = tj.at("final_days").get<double>();
    c.time.step_days = get_or<double>(tj, "step_days", 1.0);
    if (tj.contains("adaptive")) {
      const json& aj = tj.at("adaptive");
      c.time.adaptive.enabled = get_or<bool>(aj, "enabled", true);
      c.time.adaptive.tol_a = get_or<double>(aj, "tol_a", 1e-6);
      c.time.adaptive.tol_r = get_or<double>(aj, "tol_r", 1e-6);
      c.time.adaptive.safety = get_or<double>(aj, "safety", 0.9);
      c.time.adaptive.min_factor = get_or<double>(aj, "min_factor", 0.2);
      c.time.adaptive.max_factor = get_or<double>(aj, "max_factor", 5.0);
      c.time.adaptive.initial_step_days = get_or<double>(aj, "initial_step_days", 1.0);
      c.time.adaptive.min_step_days = get_or<double>(aj, "min_step_days", 1e-6);
    }

    c.scheme = parse_scheme(get_or<std::string>(j, "scheme", "erem-krylov"));
    const std::string split = get_or<std::string>(j, "splitting", "trotter");
    if (split == "trotter")
      c.splitting = Splitting::Trotter;
    else if (split == "strang")
      c.splitting = Splitting::Strang;
    else
      throw ConfigError("splitting must be 'trotter' or 'strang'");

    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      c.tol.newton_tol = get_or<double>(t, "newton_tol", 1e-6);
      c.tol.newton_max_iter = get_or<std::size_t>(t, "newton_max_iter", 25);
      c.tol.linear_tol = get_or<double>(t, "linear_tol", 1e-6);
      c.tol.linear_max_iter = get_or<std::size_t>(t, "linear_max_iter", 500);
      c.tol.phi_tol = get_or<double>(t, "phi_tol", 1e-6);
      c.tol.krylov_m = get_or<std::size_t>(t, "krylov_m", 10);
      c.tol.phi_max_substeps = get_or<std::size_t>(t, "phi_max_substeps", 1000);
      c.tol.leja_tol_a = get_or<double>(t, "leja_tol_a", 1e-6);
      c.tol.leja_tol_r = get_or<double>(t, "leja_tol_r", 1e-6);
      c.tol.leja_max_degree = get_or<std::size_t>(t, "leja_max_degree", 120);
    }

    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario field error: ") + e.what());
  }
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_json(ss.str());
}

std::string echo_scenario_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["grid"] = {{"nx", c.grid.nx},     {"ny", c.grid.ny},     {"nz", c.grid.nz},
               {"lx_m", c.grid.lx_m}, {"ly_m", c.grid.ly_m}, {"lz_m", c.grid.lz_m}};
  j["layers"] = json::array();
  for (const LayerSpec& l : c.layers)
    j["layers"].push_back({{"name", l.name},
                           {"z_from_m", l.z_from_m},
                           {"z_to_m", l.z_to_m},
                           {"permeability_darcy", l.permeability_darcy},
                           {"porosity", l.porosity},
                           {"rock_density_kg_m3", l.rock_density_kg_m3},
                           {"rock_heat_capacity_J_kgK", l.rock_heat_capacity_J_kgK},
                           {"rock_conductivity_W_mK", l.rock_conductivity_W_mK}});
  j["rock"] = {{"bulk_compressibility_per_Pa", c.bulk_compressibility_per_pa}};
  j["fluid"] = {{"conductivity_W_mK", c.fluid.conductivity_W_mK},
                {"compressibility_per_Pa", c.fluid.compressibility_per_pa},
                {"constant_density_kg_m3", c.fluid.constant_density_kg_m3},
                {"constant_heat_capacity_J_kgC", c.fluid.constant_heat_capacity_J_kgC}};
  j["he_W_m3K"] = c.he_W_m3K;
  j["gravity"] = {{"enabled", c.gravity_enabled}, {"gz_m_s2", c.gravity_gz_m_s2}};
  j["heat_sources"] = {{"rock_W_m3", c.heat_source_rock_W_m3},
                       {"fluid_W_m3", c.heat_source_fluid_W_m3}};
  j["initial"] = {
      {"temperature_base_C", c.initial.temperature_base_c},
      {"temperature_gradient_C_per_m", c.initial.temperature_gradient_c_per_m},
      {"pressure_mode", c.initial.pressure_mode == PressureInit::Steady ? "steady" : "uniform"},
      {"uniform_pressure_pa", c.initial.uniform_pressure_pa},
      {"pin_pressure_pa", c.initial.pin_pressure_pa},
      {"pin_ix", c.initial.pin_ix},
      {"pin_iy", c.initial.pin_iy},
      {"pin_iz", c.initial.pin_iz}};
  j["wells"] = json::array();
  for (const WellConfig& w : c.wells)
    j["wells"].push_back(
        {{"kind", w.control == WellControl::Pressure ? "pressure" : "rate"},
         {"column_ix", w.column_ix},
         {"column_iy", w.column_iy},
         {"cells", w.cells},
         {"rate_m3_per_s", w.rate_m3_per_s},
         {"injection_temperature_C", w.injection_temperature_c},
         {"bottom_pressure_pa", w.bottom_pressure_pa},
         {"apportion",
          w.apportion == WellApportion::Uniform ? "uniform" : "permeability"}});
  j["time"] = {{"final_days", c.time.final_days},
               {"step_days", c.time.step_days},
               {"adaptive",
                {{"enabled", c.time.adaptive.enabled},
                 {"tol_a", c.time.adaptive.tol_a},
                 {"tol_r", c.time.adaptive.tol_r},
                 {"safety", c.time.adaptive.safety},
                 {"min_factor", c.time.adaptive.min_factor},
                 {"max_factor", c.time.adaptive.max_factor},
                 {"initial_step_days", c.time.adaptive.initial_step_days},
                 {"min_step_days", c.time.adaptive.min_step_days}}}};
  j["scheme"] = c.scheme.label();
  j["splitting"] = c.splitting == Splitting::Trotter ? "trotter" : "strang";
  j["tolerances"] = {{"newton_tol", c.tol.newton_tol},
                     {"newton_max_iter", c.tol.newton_max_iter},
                     {"linear_tol", c.tol.linear_tol},
                     {"linear_max_iter", c.tol.linear_max_iter},
                     {"phi_tol", c.tol.phi_tol},
                     {"krylov_m", c.tol.krylov_m},
                     {"phi_max_substeps", c.tol.phi_max_substeps},
                     {"leja_tol_a", c.tol.leja_tol_a},
                     {"leja_tol_r", c.tol.leja_tol_r},
                     {"leja_max_degree", c.tol.leja_max_degree}};
  return j.dump(2) + "\n";
}

}  // namespace georos::sim
