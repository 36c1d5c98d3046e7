#include "georos/props/water.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace georos::props {

namespace {
constexpr double kDensityVertex = 3.9863;
constexpr double kDensityScale = 508929.2;
constexpr double kDensityNum = 288.9414;
constexpr double kDensityDen = 68.12963;
}  // namespace

double water_density(double T) {
  const double u = (T - kDensityVertex) * (T - kDensityVertex);
  const double w = (T + kDensityNum) / (T + kDensityDen);
  return 1000.0 * (1.0 - (u / kDensityScale) * w);
}

double water_density_derivative(double T) {
  const double u = (T - kDensityVertex) * (T - kDensityVertex);
  const double du = 2.0 * (T - kDensityVertex);
  const double w = (T + kDensityNum) / (T + kDensityDen);
  const double dw = (kDensityDen - kDensityNum) / ((T + kDensityDen) * (T + kDensityDen));
  return -1000.0 / kDensityScale * (du * w + u * dw);
}

double water_viscosity(double T) {
  if (T < 0.0 || T > 300.0)
    throw std::domain_error("water_viscosity: T = " + std::to_string(T) +
                            " C outside [0, 300]");
  if (T <= 40.0) return 1.787e-3 * std::exp((-0.03288 + 1.962e-4 * T) * T);
  if (T <= 100.0) return 1e-3 * std::pow(1.0 + 0.015512 * (T - 20.0), -1.572);
  return 0.2414 * std::pow(10.0, 247.8 / (T + 133.15)) * 1e-4;
}

double water_heat_capacity(double T) {
  return ((-1.3320081e-4 * T + 0.0328405) * T - 1.9254125) * T + 4206.3640128;
}

double water_expansivity(double T) {
  return -water_density_derivative(T) / water_density(T);
}

double porosity(double phi0, double p_pa, double p0_pa, double alpha_b_per_pa) {
  if (phi0 <= 0.0 || phi0 >= 1.0)
    throw std::domain_error("porosity: phi0 must lie in (0,1)");
  const double phi = phi0 * (1.0 + alpha_b_per_pa * (p_pa - p0_pa));
  if (phi <= 0.0 || phi >= 1.0)
    throw std::domain_error("porosity: phi = " + std::to_string(phi) +
                            " left (0,1) at p = " + std::to_string(p_pa) + " Pa");
  return phi;
}

double FluidModel::clamped(double T, double lo, double hi) const {
  if (T < lo || T > hi) {
    clamp_count_.fetch_add(1, std::memory_order_relaxed);
    return T < lo ? lo : hi;
  }
  return T;
}

double FluidModel::density(double T) const {
  if (constant_density > 0.0) return constant_density;
  return water_density(clamped(T, 0.0, 300.0));
}

double FluidModel::viscosity(double T) const {
  return water_viscosity(clamped(T, 0.0, 300.0));
}

double FluidModel::heat_capacity(double T) const {
  if (constant_heat_capacity > 0.0) return constant_heat_capacity;
  return water_heat_capacity(clamped(T, 1e-6, 100.0));
}

double FluidModel::expansivity(double T) const {
  if (constant_density > 0.0) return 0.0;  // constant density has no expansivity
  return water_expansivity(clamped(T, 0.0, 300.0));
}

}  // namespace georos::props
