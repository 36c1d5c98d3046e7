#include "georos/fv/tpfa.hpp"

#include <stdexcept>
#include <string>

namespace georos::fv {

FaceCoefficients transmissibilities(const StructuredGrid& grid,
                                    std::span<const double> k_cell) {
  if (k_cell.size() != grid.cell_count())
    throw std::invalid_argument("transmissibilities: k_cell size mismatch");

  FaceCoefficients out;
  out.interior.reserve(grid.interior_faces().size());
  for (const Face& f : grid.interior_faces()) {
    const double ki = k_cell[f.owner];
    const double kj = k_cell[f.neighbor];
    if (ki <= 0.0 || kj <= 0.0)
      throw std::domain_error("transmissibilities: nonpositive coefficient at face between cells " +
                              std::to_string(f.owner) + " and " + std::to_string(f.neighbor));
    out.interior.push_back(f.area * ki * kj / (ki * f.d_owner + kj * f.d_neighbor));
  }
  out.boundary.reserve(grid.boundary_faces().size());
  for (const Face& f : grid.boundary_faces()) {
    const double ki = k_cell[f.owner];
    if (ki <= 0.0)
      throw std::domain_error("transmissibilities: nonpositive coefficient at boundary cell " +
                              std::to_string(f.owner));
    out.boundary.push_back(f.area * ki / f.d_owner);
  }
  return out;
}

VelocityField darcy_velocity(const StructuredGrid& grid, std::span<const double> perm_m2,
                             std::span<const double> mu, std::span<const double> rho,
                             std::span<const double> p, double gz) {
  const FaceCoefficients tk = transmissibilities(grid, perm_m2);
  VelocityField vel;
  vel.face_flux.resize(grid.interior_faces().size());

  const auto& faces = grid.interior_faces();
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    const double rho_face = 0.5 * (rho[f.owner] + rho[f.neighbor]);
    // potential drop owner -> neighbor; its sign fixes the upstream cell
    const double dphi = (p[f.owner] - p[f.neighbor]) + rho_face * gz * f.dz;
    const double mu_up = dphi >= 0.0 ? mu[f.owner] : mu[f.neighbor];
    vel.face_flux[fi] = tk.interior[fi] / mu_up * dphi;
  }
  return vel;
}

}  // namespace georos::fv
