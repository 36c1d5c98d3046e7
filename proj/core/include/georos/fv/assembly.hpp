#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "georos/fv/grid.hpp"
#include "georos/fv/tpfa.hpp"
#include "georos/props/water.hpp"

namespace georos::fv {

/// Per-cell unknowns: rock temperature, fluid temperature [C], pressure [Pa].
struct StateFields {
  std::vector<double> T_s;
  std::vector<double> T_f;
  std::vector<double> p;
};

/// Per-cell rock description plus the pressure-law constants. p0_pa is the
/// initial pressure field: the porosity law references it cell by cell, so
/// phi equals phi0 exactly at t = 0.
struct RockField {
  std::vector<double> perm_m2;    // isotropic permeability [m^2]
  std::vector<double> phi0;       // porosity at the initial pressure
  std::vector<double> rho_s;      // [kg/m^3]
  std::vector<double> c_ps;       // [J/(kg K)]
  std::vector<double> k_s;        // [W/(m K)]
  double alpha_b_per_pa = 0.0;    // bulk vertical compressibility
  std::vector<double> p0_pa;      // reference pressure per cell
};

enum class WellKind { Rate, Pressure };

/// Rate wells are volumetric cell sources; pressure wells pin the cell
/// pressure (Dirichlet-like constraint, no inflow model).
struct Well {
  WellKind kind = WellKind::Rate;
  std::vector<std::size_t> cells;
  double rate_m3_per_s = 0.0;       // total over cells, apportioned uniformly
  double injection_T_c = 0.0;       // used when the rate is positive
  double bottom_pressure_pa = 0.0;  // for pressure-controlled wells
};

struct WellSet {
  std::vector<Well> wells;
  bool empty() const { return wells.empty(); }
};

/// Volumetric heat sources q_s, q_f [W/m^3] entering with their porosity
/// prefactors exactly as in the energy equations.
struct HeatSources {
  double q_s_W_m3 = 0.0;
  double q_f_W_m3 = 0.0;
};

/// State-dependent physical inputs shared by both equations.
struct MediumModel {
  const StructuredGrid* grid = nullptr;
  const RockField* rock = nullptr;
  const props::FluidModel* fluid = nullptr;
  const WellSet* wells = nullptr;
  HeatSources sources;
  double he_W_m3K = 0.0;  // rock/fluid heat exchange coefficient
  double gz = 0.0;        // gravity z-component [m/s^2]
};

struct TemperatureRhs {
  std::vector<double> dT_s;  // [C/s]
  std::vector<double> dT_f;
};

/// Time derivatives of (T_s, T_f): conduction scaled by (1-phi) resp. phi,
/// upwinded advection of rho_f c_pf T_f with the frozen velocity field, well
/// enthalpy sources, volumetric heating, and the he exchange term; each
/// divided by its storage coefficient so the result is a literal dT/dt.
TemperatureRhs rhs_temperature(const MediumModel& mm, const StateFields& state,
                               const VelocityField& vel, double t);

/// dp/dt = G3 + (phi*alpha_f)/(phi*beta_f + phi0*alpha_b) * G2 where G3 is
/// the mass-balance divergence and source over rho_f*(phi*beta_f +
/// phi0*alpha_b). The Darcy velocity is recomputed from the supplied
/// pressure, making this the live pressure operator of the sequential
/// scheme. Pressure-well cells get dp/dt = 0.
std::vector<double> rhs_pressure(const MediumModel& mm, const StateFields& state, double t);

/// Packing helpers for the temperature system vector y = [T_s; T_f].
std::vector<double> pack_temperature(const StateFields& s);
void unpack_temperature(std::span<const double> y, StateFields& s);

}  // namespace georos::fv
