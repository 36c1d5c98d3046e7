#pragma once

#include <cstddef>
#include <vector>

namespace georos::fv {

/// One face of the control-volume mesh. Interior faces connect owner ->
/// neighbor; boundary faces have neighbor == npos and carry the one-sided
/// distance only.
struct Face {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t owner = 0;
  std::size_t neighbor = npos;
  double area = 0.0;        // |sigma| [m^2]
  double d_owner = 0.0;     // cell-center-to-face distance [m]
  double d_neighbor = 0.0;
  int axis = 0;             // 0=x, 1=y, 2=z
  double dz = 0.0;          // z_neighbor - z_owner [m], gravity lever arm
  bool boundary() const { return neighbor == npos; }
};

/// Uniform structured parallelepiped mesh (K-orthogonal by construction).
class StructuredGrid {
 public:
  StructuredGrid() = default;
  static StructuredGrid uniform(std::size_t nx, std::size_t ny, std::size_t nz,
                                double lx_m, double ly_m, double lz_m);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t nz() const { return nz_; }
  std::size_t cell_count() const { return nx_ * ny_ * nz_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double dz() const { return dz_; }
  double cell_volume() const { return dx_ * dy_ * dz_; }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return i + nx_ * (j + ny_ * k);
  }
  std::size_t cell_k(std::size_t c) const { return c / (nx_ * ny_); }
  std::size_t cell_j(std::size_t c) const { return (c / nx_) % ny_; }
  std::size_t cell_i(std::size_t c) const { return c % nx_; }
  /// Cell-center elevation above the domain floor [m].
  double cell_center_z(std::size_t c) const { return (cell_k(c) + 0.5) * dz_; }

  const std::vector<Face>& interior_faces() const { return interior_; }
  const std::vector<Face>& boundary_faces() const { return boundary_; }

 private:
  std::size_t nx_ = 0, ny_ = 0, nz_ = 0;
  double dx_ = 0.0, dy_ = 0.0, dz_ = 0.0;
  std::vector<Face> interior_;
  std::vector<Face> boundary_;
};

}  // namespace georos::fv
