#include "georos/sim/initial_pressure.hpp"

#include <cmath>

#include "georos/linalg/iterative.hpp"
#include "georos/linalg/vector_ops.hpp"

namespace georos::sim {

using linalg::SparseMatrix;

std::vector<double> initial_pressure(const CompiledScenario& cs,
                                     std::span<const double> T_init,
                                     std::vector<std::string>* log) {
  const fv::StructuredGrid& grid = cs.grid;
  const std::size_t n = grid.cell_count();
  const double gz = cs.config.gravity_enabled ? cs.config.gravity_gz_m_s2 : 0.0;

  if (cs.config.initial.pressure_mode == PressureInit::Uniform)
    return std::vector<double>(n, cs.config.initial.uniform_pressure_pa);

  std::vector<double> mu(n), rho(n);
  for (std::size_t c = 0; c < n; ++c) {
    mu[c] = cs.fluid.viscosity(T_init[c]);
    rho[c] = cs.fluid.density(T_init[c]);
  }

  // mass sources [kg/s]; only a balanced rate-well set admits a steady state
  std::vector<double> source(n, 0.0);
  std::vector<bool> dirichlet(n, false);
  std::vector<double> dirichlet_value(n, 0.0);
  double net = 0.0, gross = 0.0;
  for (const fv::Well& w : cs.wells.wells) {
    if (w.kind == fv::WellKind::Pressure) {
      for (std::size_t c : w.cells) {
        dirichlet[c] = true;
        dirichlet_value[c] = w.bottom_pressure_pa;
      }
      continue;
    }
    net += w.rate_m3_per_s;
    gross += std::abs(w.rate_m3_per_s);
  }
  const bool balanced = gross > 0.0 && std::abs(net) <= 1e-10 * gross;
  bool has_pressure_bc = false;
  for (std::size_t c = 0; c < n; ++c) has_pressure_bc = has_pressure_bc || dirichlet[c];
  if (balanced || has_pressure_bc) {
    for (const fv::Well& w : cs.wells.wells) {
      if (w.kind != fv::WellKind::Rate) continue;
      for (std::size_t c : w.cells) {
        const double T_src = w.rate_m3_per_s >= 0.0 ? w.injection_T_c : T_init[c];
        source[c] += cs.fluid.density(T_src) * w.rate_m3_per_s /
                     static_cast<double>(w.cells.size());
      }
    }
  } else if (gross > 0.0 && log) {
    log->push_back("initial_pressure: well rates do not balance (net " +
                   std::to_string(net) + " m3/s); solving the natural no-well state");
  }

  if (!has_pressure_bc) {
    dirichlet[cs.pin_cell] = true;
    dirichlet_value[cs.pin_cell] = cs.config.initial.pin_pressure_pa;
  }

  const auto& faces = grid.interior_faces();
  std::vector<double> p(n, cs.config.initial.pin_pressure_pa);

  // Picard iteration on the upstream viscosity choice
  for (int pic = 0; pic < 20; ++pic) {
    std::vector<std::size_t> ti, tj;
    std::vector<double> tv;
    std::vector<double> b = source;

    auto add = [&](std::size_t i, std::size_t j, double v) {
      ti.push_back(i);
      tj.push_back(j);
      tv.push_back(v);
    };
    for (std::size_t c = 0; c < n; ++c) add(c, c, 0.0);  // keep diagonal present

    for (const fv::Face& f : faces) {
      const std::size_t i = f.owner, j = f.neighbor;
      const double perm_t = f.area * cs.rock.perm_m2[i] * cs.rock.perm_m2[j] /
                            (cs.rock.perm_m2[i] * f.d_owner + cs.rock.perm_m2[j] * f.d_neighbor);
      const double rho_face = 0.5 * (rho[i] + rho[j]);
      const double grav = rho_face * gz * f.dz;
      const double dphi = (p[i] - p[j]) + grav;
      const std::size_t up = dphi >= 0.0 ? i : j;
      const double lam = perm_t / mu[up] * rho[up];
      if (!dirichlet[i]) {
        add(i, i, lam);
        add(i, j, -lam);
        b[i] -= lam * grav;
      }
      if (!dirichlet[j]) {
        add(j, j, lam);
        add(j, i, -lam);
        b[j] += lam * grav;
      }
    }
    for (std::size_t c = 0; c < n; ++c)
      if (dirichlet[c]) {
        add(c, c, 1.0);
        b[c] = dirichlet_value[c];
      }

    SparseMatrix A = SparseMatrix::from_triplets(n, n, ti, tj, tv);
    auto [p_new, rep] = linalg::bicgstab_ilu0(A, b, p, 1e-12, 10000);
    if (!rep.converged)
      throw ConfigError("initial_pressure: steady solve did not converge (residual " +
                        std::to_string(rep.final_residual) + ")");
    double dmax = 0.0, pscale = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      dmax = std::max(dmax, std::abs(p_new[c] - p[c]));
      pscale = std::max(pscale, std::abs(p_new[c]));
    }
    p = std::move(p_new);
    if (dmax <= 1e-12 * pscale) break;
  }
  return p;
}

}  // namespace georos::sim
