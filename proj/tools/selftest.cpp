#include "selftest.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "georos/fv/assembly.hpp"
#include "georos/linalg/expm.hpp"
#include "georos/linalg/iterative.hpp"
#include "georos/linalg/sparse.hpp"
#include "georos/linalg/vector_ops.hpp"
#include "georos/ode/stability.hpp"
#include "georos/ode/tableau.hpp"
#include "georos/phi/krylov.hpp"
#include "georos/phi/leja.hpp"
#include "georos/sim/presets.hpp"
#include "georos/sim/simulation.hpp"

namespace {

int g_failures = 0;

void check(const char* name, bool ok, double value = 0.0) {
  std::printf("[%s] %-55s %s\n", ok ? "PASS" : "FAIL", name,
              value != 0.0 ? ("(" + std::to_string(value) + ")").c_str() : "");
  if (!ok) ++g_failures;
}

using georos::linalg::SparseMatrix;

}  // namespace

int run_selftest() {
  using namespace georos;
  g_failures = 0;

  // scalar phi values
  check("phi1(0) = 1", std::abs(linalg::phi_scalar(1, 0.0) - 1.0) < 1e-15);
  check("phi2(0) = 1/2", std::abs(linalg::phi_scalar(2, 0.0) - 0.5) < 1e-15);
  check("phi1(-2) = (e^-2 - 1)/(-2)",
        std::abs(linalg::phi_scalar(1, -2.0) - (std::exp(-2.0) - 1.0) / -2.0) < 1e-14);

  // tableau digits
  const ode::RosenbrockTableau r2 = ode::ros2_1();
  check("ros2(1) gamma matches printed digits", r2.gamma == 1.707106781186547e+00);
  const ode::RosenbrockTableau r3 = ode::ros3p();
  check("ros3p gamma matches printed digits", r3.gamma == 7.886751345948129e-01);

  // spmv oracle: 1D Laplacian on ones
  {
    SparseMatrix A = SparseMatrix::tridiag(4, 1.0, -2.0, 1.0);
    std::vector<double> x(4, 1.0);
    std::vector<double> y = linalg::spmv(A, x);
    check("spmv tridiag oracle",
          y[0] == -1.0 && y[1] == 0.0 && y[2] == 0.0 && y[3] == -1.0);
  }

  // bicgstab + ilu0 against a known solution
  {
    SparseMatrix A = SparseMatrix::tridiag(50, -1.0, 4.0, -1.0);
    std::vector<double> x_true(50);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : x_true) v = u(rng);
    std::vector<double> b = linalg::spmv(A, x_true);
    auto [x, rep] = linalg::bicgstab_ilu0(A, b, std::vector<double>(50, 0.0), 1e-10, 200);
    double err = 0.0;
    for (std::size_t i = 0; i < 50; ++i) err = std::max(err, std::abs(x[i] - x_true[i]));
    check("bicgstab_ilu0 solves tridiagonal system", rep.converged && err < 1e-8, err);
  }

  // Leja seed points
  {
    const phi::LejaSequence seq = phi::fast_leja_points(2);
    check("fast Leja points start 2, -2, 0",
          seq.points[0] == 2.0 && seq.points[1] == -2.0 && seq.points[2] == 0.0);
  }

  // Krylov vs Leja on a scalar problem
  {
    auto action = [](std::span<const double> x, std::span<double> y) { y[0] = -2.0 * x[0]; };
    std::vector<double> v{1.0};
    phi::PhiResult k = phi::phi_krylov(action, 1.0, v, 1, 10, 1e-10);
    phi::LejaControl ctrl;
    ctrl.tol_a = ctrl.tol_r = 1e-10;
    phi::PhiResult l = phi::phi_leja(action, 1.0, v, 1, {-2.0, -2.0}, ctrl, 1.0);
    const double exact = (std::exp(-2.0) - 1.0) / -2.0;
    check("phi backends agree on scalar J = -2",
          std::abs(k.value[0] - exact) < 1e-10 && std::abs(l.value[0] - exact) < 1e-10);
  }

  // stability limits
  {
    ode::SchemeId th;
    th.kind = ode::SchemeKind::ThetaEuler;
    th.theta = 1.0;
    const double r = std::abs(ode::stability_function(th, {-1e6, 0.0}));
    check("theta=1 is L-stable (|R(-1e6)| ~ 1e-6)", r < 1e-5, r);
    th.theta = 0.5;
    const double r2v = std::abs(ode::stability_function(th, {-1e6, 0.0}));
    check("theta=1/2 is A- but not L-stable", r2v <= 1.0 + 1e-12 && r2v > 0.9, r2v);
  }

  // conservation micro-run (10 steps of the closed box)
  {
    sim::ScenarioConfig cfg = sim::conservation_closed();
    cfg.time.final_days = 10.0;
    sim::RunResult res = sim::run_simulation(cfg);
    const sim::CompiledScenario cs = sim::compile(cfg);
    auto energy = [&](const fv::StateFields& s, std::span<const double> p0) {
      double e = 0.0;
      for (std::size_t c = 0; c < cs.grid.cell_count(); ++c) {
        const double phi = props::porosity(cs.rock.phi0[c], s.p[c], p0[c],
                                           cs.rock.alpha_b_per_pa);
        e += cs.grid.cell_volume() *
             ((1.0 - phi) * cs.rock.rho_s[c] * cs.rock.c_ps[c] * s.T_s[c] +
              phi * cs.fluid.density(s.T_f[c]) * cs.fluid.heat_capacity(s.T_f[c]) *
                  s.T_f[c]);
      }
      return e;
    };
    fv::StateFields init;
    init.T_s = cs.initial_temperature();
    init.T_f = init.T_s;
    init.p.assign(cs.grid.cell_count(), cfg.initial.uniform_pressure_pa);
    const double e0 = energy(init, init.p);
    const double e1 = energy(res.state, init.p);
    const double drift = std::abs(e1 - e0) / std::abs(e0);
    check("closed-box heat content conserved over 10 steps", drift < 1e-9, drift);
  }

  std::printf("%s\n", g_failures == 0 ? "selftest: all checks passed"
                                      : "selftest: FAILURES detected");
  return g_failures;
}
