#pragma once

#include <atomic>
#include <cstdint>

namespace georos::props {

// Liquid water correlations for low-enthalpy conditions, temperature in
// degrees Celsius throughout. Each function evaluates its printed formula
// verbatim; validity handling (clamp vs throw) is noted per function.

/// Density [kg/m^3]:
///   1000 * (1 - ((T-3.9863)^2 / 508929.2) * ((T+288.9414)/(T+68.12963)))
/// Valid on [0, 300] C; callers that may overshoot should clamp first.
double water_density(double T_celsius);

/// Analytic d(density)/dT [kg/(m^3 C)], closed form (no finite differences).
double water_density_derivative(double T_celsius);

/// Dynamic viscosity [kg/(m s)], three branches with breakpoints at 40 C and
/// 100 C. The printed branches do not join continuously; the jump at 40 C is
/// below 5% and is kept as printed. Throws std::domain_error outside [0,300].
double water_viscosity(double T_celsius);

/// Specific heat capacity [J/(kg C)], cubic in T, valid on (0, 100):
///   -1.3320081e-4 T^3 + 0.0328405 T^2 - 1.9254125 T + 4206.3640128
double water_heat_capacity(double T_celsius);

/// Thermal expansivity alpha_f = -(1/rho) drho/dT [1/C]; zero at the density
/// extremum T = 3.9863 C.
double water_expansivity(double T_celsius);

/// Porosity under the linear pressure law phi = phi0 * (1 + alpha_b*(p-p0)).
/// Throws std::domain_error when the result leaves (0,1).
double porosity(double phi0, double p_pa, double p0_pa, double alpha_b_per_pa);

/// Bundle of fluid parameters used by the assembly routines. Out-of-range
/// temperatures are clamped into the correlation domain and counted, since
/// transient over/undershoots near sharp fronts are expected at large steps.
class FluidModel {
 public:
  FluidModel() = default;
  FluidModel(const FluidModel& o)
      : conductivity_W_mK(o.conductivity_W_mK),
        compressibility_per_pa(o.compressibility_per_pa),
        constant_density(o.constant_density),
        constant_heat_capacity(o.constant_heat_capacity),
        clamp_count_(o.clamp_count_.load()) {}
  FluidModel& operator=(const FluidModel& o) {
    conductivity_W_mK = o.conductivity_W_mK;
    compressibility_per_pa = o.compressibility_per_pa;
    constant_density = o.constant_density;
    constant_heat_capacity = o.constant_heat_capacity;
    clamp_count_.store(o.clamp_count_.load());
    return *this;
  }

  double conductivity_W_mK = 0.6;
  double compressibility_per_pa = 4.5e-10;  // configurable constant, see docs

  // optional constant-property overrides (<= 0 disables)
  double constant_density = 0.0;
  double constant_heat_capacity = 0.0;

  double density(double T) const;
  double viscosity(double T) const;
  double heat_capacity(double T) const;
  double expansivity(double T) const;

  std::uint64_t clamp_warnings() const { return clamp_count_.load(); }
  void reset_warnings() const { clamp_count_.store(0); }

 private:
  double clamped(double T, double lo, double hi) const;
  mutable std::atomic<std::uint64_t> clamp_count_{0};
};

}  // namespace georos::props
