#include "georos/fv/grid.hpp"

#include <stdexcept>

namespace georos::fv {

StructuredGrid StructuredGrid::uniform(std::size_t nx, std::size_t ny, std::size_t nz,
                                       double lx_m, double ly_m, double lz_m) {
  if (nx == 0 || ny == 0 || nz == 0)
    throw std::invalid_argument("StructuredGrid: zero cell count");
  if (lx_m <= 0.0 || ly_m <= 0.0 || lz_m <= 0.0)
    throw std::invalid_argument("StructuredGrid: nonpositive extent");

  StructuredGrid g;
  g.nx_ = nx;
  g.ny_ = ny;
  g.nz_ = nz;
  g.dx_ = lx_m / nx;
  g.dy_ = ly_m / ny;
  g.dz_ = lz_m / nz;

  const double ax = g.dy_ * g.dz_, ay = g.dx_ * g.dz_, az = g.dx_ * g.dy_;
  const double area[3] = {ax, ay, az};
  const double half[3] = {0.5 * g.dx_, 0.5 * g.dy_, 0.5 * g.dz_};

  auto add_face = [&](std::size_t c, std::size_t nb, int axis, double dz) {
    Face f;
    f.owner = c;
    f.neighbor = nb;
    f.area = area[axis];
    f.d_owner = half[axis];
    f.d_neighbor = half[axis];
    f.axis = axis;
    f.dz = dz;
    if (nb == Face::npos)
      g.boundary_.push_back(f);
    else
      g.interior_.push_back(f);
  };

  for (std::size_t k = 0; k < nz; ++k)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t c = g.index(i, j, k);
        // interior faces stored once, oriented towards increasing index
        if (i + 1 < nx) add_face(c, g.index(i + 1, j, k), 0, 0.0);
        if (j + 1 < ny) add_face(c, g.index(i, j + 1, k), 1, 0.0);
        if (k + 1 < nz) add_face(c, g.index(i, j, k + 1), 2, g.dz_);
        // boundary faces
        if (i == 0) add_face(c, Face::npos, 0, 0.0);
        if (i + 1 == nx) add_face(c, Face::npos, 0, 0.0);
        if (j == 0) add_face(c, Face::npos, 1, 0.0);
        if (j + 1 == ny) add_face(c, Face::npos, 1, 0.0);
        if (k == 0) add_face(c, Face::npos, 2, -g.dz_ * 0.5);
        if (k + 1 == nz) add_face(c, Face::npos, 2, g.dz_ * 0.5);
      }
  return g;
}

}  // namespace georos::fv
