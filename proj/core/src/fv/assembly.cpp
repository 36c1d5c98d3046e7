#include "georos/fv/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace georos::fv {

namespace {

// per-cell porosity under the linear pressure law
std::vector<double> porosities(const MediumModel& mm, std::span<const double> p) {
  const RockField& rock = *mm.rock;
  std::vector<double> phi(p.size());
  for (std::size_t c = 0; c < p.size(); ++c)
    phi[c] = props::porosity(rock.phi0[c], p[c], rock.p0_pa[c], rock.alpha_b_per_pa);
  return phi;
}

struct WellRates {
  // per-cell volumetric rate [m^3/s] and the temperature the inflow carries
  std::vector<double> rate;
  std::vector<double> temperature;
  std::vector<bool> pressure_pinned;
};

WellRates well_rates(const MediumModel& mm, const StateFields& state) {
  const std::size_t n = mm.grid->cell_count();
  WellRates wr;
  wr.rate.assign(n, 0.0);
  wr.temperature.assign(n, 0.0);
  wr.pressure_pinned.assign(n, false);
  if (!mm.wells) return wr;
  for (const Well& w : mm.wells->wells) {
    if (w.kind == WellKind::Pressure) {
      for (std::size_t c : w.cells) wr.pressure_pinned[c] = true;
      continue;
    }
    if (w.cells.empty()) continue;
    const double per_cell = w.rate_m3_per_s / static_cast<double>(w.cells.size());
    for (std::size_t c : w.cells) {
      wr.rate[c] += per_cell;
      wr.temperature[c] = per_cell >= 0.0 ? w.injection_T_c : state.T_f[c];
    }
  }
  return wr;
}

}  // namespace

TemperatureRhs rhs_temperature(const MediumModel& mm, const StateFields& state,
                               const VelocityField& vel, double /*t*/) {
  const StructuredGrid& grid = *mm.grid;
  const RockField& rock = *mm.rock;
  const props::FluidModel& fluid = *mm.fluid;
  const std::size_t n = grid.cell_count();
  const double vol = grid.cell_volume();

  const std::vector<double> phi = porosities(mm, state.p);

  // effective conductivities for the harmonic face coefficients
  std::vector<double> ks_eff(n), kf_eff(n);
  for (std::size_t c = 0; c < n; ++c) {
    ks_eff[c] = (1.0 - phi[c]) * rock.k_s[c];
    kf_eff[c] = phi[c] * fluid.conductivity_W_mK;
  }
  const FaceCoefficients ts = transmissibilities(grid, ks_eff);
  const FaceCoefficients tf = transmissibilities(grid, kf_eff);

  std::vector<double> heat_s(n, 0.0), heat_f(n, 0.0);  // net power per cell [W]

  const auto& faces = grid.interior_faces();
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    const double cond_s = ts.interior[fi] * (state.T_s[f.neighbor] - state.T_s[f.owner]);
    heat_s[f.owner] += cond_s;
    heat_s[f.neighbor] -= cond_s;
    const double cond_f = tf.interior[fi] * (state.T_f[f.neighbor] - state.T_f[f.owner]);
    heat_f[f.owner] += cond_f;
    heat_f[f.neighbor] -= cond_f;

    // upwinded advective flux of X = rho_f c_pf T_f
    const double q = vel.face_flux[fi];
    const std::size_t donor = q >= 0.0 ? f.owner : f.neighbor;
    const double Td = state.T_f[donor];
    const double x = fluid.density(Td) * fluid.heat_capacity(Td) * Td;
    heat_f[f.owner] -= q * x;
    heat_f[f.neighbor] += q * x;
  }
  // homogeneous Neumann boundaries: no diffusive or advective boundary flux

  TemperatureRhs rhs;
  rhs.dT_s.resize(n);
  rhs.dT_f.resize(n);
  const WellRates wr = well_rates(mm, state);

  for (std::size_t c = 0; c < n; ++c) {
    const double Tf = state.T_f[c];
    const double cs = (1.0 - phi[c]) * rock.rho_s[c] * rock.c_ps[c];
    const double cf = phi[c] * fluid.density(Tf) * fluid.heat_capacity(Tf);
    if (cs <= 0.0 || cf <= 0.0)
      throw std::domain_error("rhs_temperature: zero heat capacity coefficient in cell " +
                              std::to_string(c));

    const double exch = mm.he_W_m3K * (state.T_f[c] - state.T_s[c]) * vol;

    double power_s = heat_s[c] + (1.0 - phi[c]) * mm.sources.q_s_W_m3 * vol + exch;
    double power_f = heat_f[c] + phi[c] * mm.sources.q_f_W_m3 * vol - exch;

    // well enthalpy: injected water arrives at the well temperature,
    // produced water leaves at the cell temperature
    if (wr.rate[c] != 0.0) {
      const double Tw = wr.temperature[c];
      power_f += fluid.density(Tw) * fluid.heat_capacity(Tw) * Tw * wr.rate[c];
    }

    rhs.dT_s[c] = power_s / (cs * vol);
    rhs.dT_f[c] = power_f / (cf * vol);
  }
  return rhs;
}

std::vector<double> rhs_pressure(const MediumModel& mm, const StateFields& state, double t) {
  const StructuredGrid& grid = *mm.grid;
  const RockField& rock = *mm.rock;
  const props::FluidModel& fluid = *mm.fluid;
  const std::size_t n = grid.cell_count();
  const double vol = grid.cell_volume();

  const std::vector<double> phi = porosities(mm, state.p);

  std::vector<double> mu(n), rho(n);
  for (std::size_t c = 0; c < n; ++c) {
    mu[c] = fluid.viscosity(state.T_f[c]);
    rho[c] = fluid.density(state.T_f[c]);
  }
  const VelocityField vel = darcy_velocity(grid, rock.perm_m2, mu, rho, state.p, mm.gz);

  // mass balance: net kg/s into each cell
  std::vector<double> mass(n, 0.0);
  const auto& faces = grid.interior_faces();
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    const double q = vel.face_flux[fi];
    const double rho_up = q >= 0.0 ? rho[f.owner] : rho[f.neighbor];
    mass[f.owner] -= q * rho_up;
    mass[f.neighbor] += q * rho_up;
  }

  const WellRates wr = well_rates(mm, state);
  const TemperatureRhs trhs = rhs_temperature(mm, state, vel, t);

  std::vector<double> dp(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (wr.pressure_pinned[c]) {
      dp[c] = 0.0;
      continue;
    }
    const double Tf = state.T_f[c];
    const double storage = phi[c] * fluid.compressibility_per_pa +
                           rock.phi0[c] * rock.alpha_b_per_pa;
    if (storage <= 0.0)
      throw std::domain_error("rhs_pressure: vanishing storage coefficient in cell " +
                              std::to_string(c));
    double m = mass[c];
    if (wr.rate[c] != 0.0) m += fluid.density(wr.temperature[c]) * wr.rate[c];

    const double g3 = m / (rho[c] * storage * vol);
    const double coupling = phi[c] * fluid.expansivity(Tf) / storage;
    dp[c] = g3 + coupling * trhs.dT_f[c];
  }
  return dp;
}

std::vector<double> pack_temperature(const StateFields& s) {
  std::vector<double> y;
  y.reserve(2 * s.T_s.size());
  y.insert(y.end(), s.T_s.begin(), s.T_s.end());
  y.insert(y.end(), s.T_f.begin(), s.T_f.end());
  return y;
}

void unpack_temperature(std::span<const double> y, StateFields& s) {
  const std::size_t n = y.size() / 2;
  s.T_s.assign(y.begin(), y.begin() + n);
  s.T_f.assign(y.begin() + n, y.end());
}

}  // namespace georos::fv
