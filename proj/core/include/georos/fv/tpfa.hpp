#pragma once

#include <span>
#include <vector>

#include "georos/fv/grid.hpp"

namespace georos::fv {

/// Per-face two-point transmissibilities. Interior faces carry the harmonic
/// form |sigma| k_i k_j / (k_i d_i + k_j d_j); boundary faces the one-sided
/// form |sigma| k_i / d_i (used only when a Dirichlet value is imposed).
struct FaceCoefficients {
  std::vector<double> interior;
  std::vector<double> boundary;
};

/// k_cell is a per-cell scalar conductivity (or mobility-scaled
/// permeability). Throws std::domain_error on a nonpositive coefficient at
/// an active face.
FaceCoefficients transmissibilities(const StructuredGrid& grid,
                                    std::span<const double> k_cell);

/// Volumetric flux per interior face [m^3/s], oriented owner -> neighbor
/// (antisymmetric under orientation flip by construction).
struct VelocityField {
  std::vector<double> face_flux;
};

/// Darcy flux v = -(K/mu)(grad p - rho_f g) in TPFA form. The pressure
/// difference uses the harmonic permeability transmissibility divided by the
/// upstream cell's viscosity; the gravity term uses the arithmetic mean of
/// the adjacent densities times g * dz. gz is the z-component of gravity
/// (negative for downward pull); 0 disables gravity.
VelocityField darcy_velocity(const StructuredGrid& grid, std::span<const double> perm_m2,
                             std::span<const double> mu, std::span<const double> rho,
                             std::span<const double> p, double gz);

}  // namespace georos::fv
