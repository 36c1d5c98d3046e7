#include "georos/sim/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>

#include "georos/fv/jacobian.hpp"
#include "georos/linalg/vector_ops.hpp"
#include "georos/ode/controller.hpp"
#include "georos/ode/tableau.hpp"
#include "georos/sim/initial_pressure.hpp"

namespace georos::sim {

using linalg::SparseMatrix;

namespace {

struct OdeSys {
  ode::RhsFn rhs;
  const SparseMatrix* pattern = nullptr;
};

/// Advances one subsystem by the configured scheme; fills *embedded_err for
/// the embedded Rosenbrock schemes (weighted norm), leaves it untouched
/// otherwise.
class SchemeStepper {
 public:
  SchemeStepper(const ScenarioConfig& cfg) : cfg_(cfg) {
    newton_.tol = cfg.tol.newton_tol;
    newton_.max_iter = cfg.tol.newton_max_iter;
    newton_.lin_tol = cfg.tol.linear_tol;
    newton_.lin_max_iter = cfg.tol.linear_max_iter;
    if (cfg.scheme.kind == ode::SchemeKind::Ros2_1) tableau_ = ode::ros2_1();
    if (cfg.scheme.kind == ode::SchemeKind::Ros3p) tableau_ = ode::ros3p();
  }

  std::vector<double> step(const OdeSys& sys, std::span<const double> y, double t,
                           double tau, double* embedded_err, ode::WorkCounters& work) {
    const ode::SchemeId& sc = cfg_.scheme;
    switch (sc.kind) {
      case ode::SchemeKind::ThetaEuler: {
        auto jac = [&](std::span<const double> x, double tt) {
          return fv::fd_jacobian(*sys.pattern, sys.rhs, x, tt);
        };
        return ode::theta_euler_step(sys.rhs, jac, y, t, tau, sc.theta, newton_, &work);
      }
      case ode::SchemeKind::Erem: {
        const SparseMatrix J = fv::fd_jacobian(*sys.pattern, sys.rhs, y, t);
        ++work.jacobian_builds;
        auto action = [&J](std::span<const double> x, std::span<double> out) {
          linalg::spmv(J, x, out);
        };
        std::unique_ptr<ode::PhiBackend> backend;
        if (sc.backend == ode::PhiBackendKind::Krylov) {
          phi::KrylovOptions opt;
          opt.m = cfg_.tol.krylov_m;
          opt.tol = cfg_.tol.phi_tol;
          opt.max_substeps = cfg_.tol.phi_max_substeps;
          backend = std::make_unique<ode::KrylovPhiBackend>(action, opt);
        } else {
          phi::LejaControl ctrl;
          ctrl.tol_a = cfg_.tol.leja_tol_a;
          ctrl.tol_r = cfg_.tol.leja_tol_r;
          ctrl.p = 2;
          ctrl.max_degree = cfg_.tol.leja_max_degree;
          ctrl.max_substeps = cfg_.tol.phi_max_substeps;
          backend = std::make_unique<ode::LejaPhiBackend>(
              action, linalg::gershgorin_interval(J), ctrl);
        }
        return ode::erem_step(sys.rhs, *backend, y, t, tau, &work);
      }
      case ode::SchemeKind::Rosm: {
        const SparseMatrix J = fv::fd_jacobian(*sys.pattern, sys.rhs, y, t);
        ++work.jacobian_builds;
        return ode::rosm_step(sys.rhs, J, {}, y, t, tau, sc.gamma, newton_, &work);
      }
      case ode::SchemeKind::Ros2_1:
      case ode::SchemeKind::Ros3p: {
        const SparseMatrix J = fv::fd_jacobian(*sys.pattern, sys.rhs, y, t);
        ++work.jacobian_builds;
        auto [y_next, y_emb] =
            ode::rosenbrock_s_stage_step(sys.rhs, J, {}, y, t, tau, tableau_, newton_, &work);
        if (embedded_err) {
          std::vector<double> diff(y_next.size());
          for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = y_next[i] - y_emb[i];
          *embedded_err = ode::weighted_error_norm(diff, y, y_next,
                                                   cfg_.time.adaptive.tol_a,
                                                   cfg_.time.adaptive.tol_r);
        }
        return std::move(y_next);
      }
    }
    throw std::logic_error("SchemeStepper: unhandled scheme");
  }

 private:
  const ScenarioConfig& cfg_;
  ode::NewtonSettings newton_;
  ode::RosenbrockTableau tableau_;
};

class SimulationLoop {
 public:
  SimulationLoop(const ScenarioConfig& cfg, const StepObserver& observer)
      : cs_(compile(cfg)), cfg_(cs_.config), stepper_(cfg_), observer_(observer) {
    pattern_T_ = fv::sparsity_pattern_temperature(cs_.grid);
    pattern_p_ = fv::sparsity_pattern_pressure(cs_.grid);
    medium_ = cs_.medium();
    medium_.grid = &cs_.grid;  // rebind to the compiled copies held here
    medium_.rock = &cs_.rock;
    medium_.fluid = &cs_.fluid;
    medium_.wells = &cs_.wells;
  }

  RunResult run() {
    RunResult out;
    cs_.fluid.reset_warnings();

    const std::vector<double> T0 = cs_.initial_temperature();
    out.state.T_s = T0;
    out.state.T_f = T0;
    out.state.p = initial_pressure(cs_, T0, &out.diag.log);
    cs_.rock.p0_pa = out.state.p;  // porosity references the initial field

    out.diag.log.push_back("scenario '" + cfg_.name + "': " +
                           std::to_string(cs_.grid.cell_count()) + " cells, scheme " +
                           cfg_.scheme.label() + ", splitting " +
                           (cfg_.splitting == Splitting::Trotter ? "trotter" : "strang"));
    out.times_s.push_back(0.0);
    if (observer_) observer_(out.state, 0.0);

    const double t_final = cfg_.time.final_days * kSecondsPerDay;
    const auto wall0 = std::chrono::steady_clock::now();

    if (cfg_.time.adaptive.enabled)
      run_adaptive(out, t_final);
    else
      run_constant(out, t_final);

    out.diag.cpu_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    out.diag.work = diag_work_;
    out.diag.clamp_warnings = cs_.fluid.clamp_warnings();
    out.diag.log.push_back("finished: " + std::to_string(out.diag.steps) + " steps, " +
                           std::to_string(out.diag.step_rejections) + " rejections, " +
                           std::to_string(out.diag.clamp_warnings) + " property clamps");
    return out;
  }

 private:
  void run_constant(RunResult& out, double t_final) {
    const double tau = cfg_.time.step_days * kSecondsPerDay;
    double t = 0.0;
    while (t < t_final * (1.0 - 1e-12)) {
      const double step = std::min(tau, t_final - t);
      advance_with_retries(out, t, step, 0);
      t += step;
      out.times_s.push_back(t);
      if (observer_) observer_(out.state, t);
      log_step(out, t, step);
    }
  }

  void run_adaptive(RunResult& out, double t_final) {
    const AdaptiveSpec& ad = cfg_.time.adaptive;
    ode::StepController ctrl;
    ctrl.tol_a = ad.tol_a;
    ctrl.tol_r = ad.tol_r;
    ctrl.safety = ad.safety;
    ctrl.min_factor = ad.min_factor;
    ctrl.max_factor = ad.max_factor;
    ctrl.tau = ad.initial_step_days * kSecondsPerDay;
    const double tau_min = ad.min_step_days * kSecondsPerDay;
    const int order = cfg_.scheme.kind == ode::SchemeKind::Ros3p ? 3 : 2;

    double t = 0.0;
    while (t < t_final * (1.0 - 1e-12)) {
      ctrl.tau = std::min(ctrl.tau, t_final - t);
      fv::StateFields trial = out.state;
      double err = 0.0;
      bool failed = false;
      try {
        err = advance_macro(trial, t, ctrl.tau, true);
      } catch (const ode::StepFailure&) {
        failed = true;
      }
      if (!failed) {
        const ode::StepDecision d = ode::adapt_step(ctrl, err, order);
        if (d.accept) {
          out.state = std::move(trial);
          t += ctrl.tau;
          ++out.diag.steps;
          out.times_s.push_back(t);
          if (observer_) observer_(out.state, t);
          log_step(out, t, ctrl.tau);
          ctrl.tau = d.tau_next;
          continue;
        }
        ctrl.tau = d.tau_next;
      } else {
        ctrl.tau *= 0.5;
      }
      ++out.diag.step_rejections;
      if (ctrl.tau < tau_min)
        throw NumericalFailure(diagnostic_dump(out, t, "adaptive step fell below minimum"));
    }
  }

  void advance_with_retries(RunResult& out, double t, double tau, int depth) {
    if (depth > 10)
      throw NumericalFailure(diagnostic_dump(out, t, "step-failure cascade below tau/2^10"));
    fv::StateFields trial = out.state;
    try {
      advance_macro(trial, t, tau, false);
    } catch (const ode::StepFailure& e) {
      ++out.diag.step_rejections;
      out.diag.log.push_back("step failure at t = " + std::to_string(t / kSecondsPerDay) +
                             " d (tau = " + std::to_string(tau / kSecondsPerDay) +
                             " d): " + e.what());
      advance_with_retries(out, t, 0.5 * tau, depth + 1);
      advance_with_retries(out, t + 0.5 * tau, 0.5 * tau, depth + 1);
      return;
    }
    out.state = std::move(trial);
    if (depth == 0) ++out.diag.steps;
  }

  /// One macro step at the configured splitting; returns the max embedded
  /// error over the subsystem advances when requested.
  double advance_macro(fv::StateFields& state, double t, double tau, bool want_err) {
    double err = 0.0;
    auto merge = [&](double e) { err = std::max(err, e); };

    if (cfg_.splitting == Splitting::Trotter) {
      merge(advance_temperature(state, t, tau, want_err));
      merge(advance_pressure(state, t, tau, want_err));
    } else {
      merge(advance_temperature(state, t, 0.5 * tau, want_err));
      merge(advance_pressure(state, t, tau, want_err));
      merge(advance_temperature(state, t + 0.5 * tau, 0.5 * tau, want_err));
    }
    return err;
  }

  double advance_temperature(fv::StateFields& state, double t, double tau, bool want_err) {
    // velocity frozen at the sub-step start state
    const std::size_t n = cs_.grid.cell_count();
    std::vector<double> mu(n), rho(n);
    for (std::size_t c = 0; c < n; ++c) {
      mu[c] = cs_.fluid.viscosity(state.T_f[c]);
      rho[c] = cs_.fluid.density(state.T_f[c]);
    }
    const fv::VelocityField vel =
        fv::darcy_velocity(cs_.grid, cs_.rock.perm_m2, mu, rho, state.p, medium_.gz);

    const std::vector<double> p_frozen = state.p;
    OdeSys sys;
    sys.pattern = &pattern_T_;
    sys.rhs = [&, p_frozen](std::span<const double> y, double tt) {
      fv::StateFields s;
      fv::unpack_temperature(y, s);
      s.p = p_frozen;
      const fv::TemperatureRhs r = fv::rhs_temperature(medium_, s, vel, tt);
      std::vector<double> dy;
      dy.reserve(y.size());
      dy.insert(dy.end(), r.dT_s.begin(), r.dT_s.end());
      dy.insert(dy.end(), r.dT_f.begin(), r.dT_f.end());
      return dy;
    };

    const std::vector<double> y = fv::pack_temperature(state);
    double err = 0.0;
    std::vector<double> y_next =
        stepper_.step(sys, y, t, tau, want_err ? &err : nullptr, work_ref());
    fv::StateFields tmp;
    fv::unpack_temperature(y_next, tmp);
    state.T_s = std::move(tmp.T_s);
    state.T_f = std::move(tmp.T_f);
    return err;
  }

  double advance_pressure(fv::StateFields& state, double t, double tau, bool want_err) {
    OdeSys sys;
    sys.pattern = &pattern_p_;
    const std::vector<double> Ts = state.T_s, Tf = state.T_f;
    sys.rhs = [&, Ts, Tf](std::span<const double> p, double tt) {
      fv::StateFields s;
      s.T_s = Ts;
      s.T_f = Tf;
      s.p.assign(p.begin(), p.end());
      return fv::rhs_pressure(medium_, s, tt);
    };
    double err = 0.0;
    std::vector<double> p_next =
        stepper_.step(sys, state.p, t, tau, want_err ? &err : nullptr, work_ref());
    state.p = std::move(p_next);
    return err;
  }

  ode::WorkCounters& work_ref() { return diag_work_; }

  void log_step(RunResult& out, double t, double tau) {
    out.diag.work = diag_work_;
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "step %zu: t = %.6g d, tau = %.6g d, newton %zu, linsolve %zu, "
                  "matvec %zu",
                  out.diag.steps, t / kSecondsPerDay, tau / kSecondsPerDay,
                  diag_work_.newton_iters, diag_work_.linear_solves,
                  diag_work_.phi_matvecs);
    out.diag.log.emplace_back(buf);
  }

  std::string diagnostic_dump(const RunResult& out, double t, const std::string& why) {
    char buf[256];
    const auto& s = out.state;
    std::snprintf(buf, sizeof(buf),
                  "%s at t = %.6g d; |T_s| in [%.4g, %.4g] C, |T_f| in [%.4g, %.4g] C, "
                  "p in [%.6g, %.6g] Pa",
                  why.c_str(), t / kSecondsPerDay,
                  *std::min_element(s.T_s.begin(), s.T_s.end()),
                  *std::max_element(s.T_s.begin(), s.T_s.end()),
                  *std::min_element(s.T_f.begin(), s.T_f.end()),
                  *std::max_element(s.T_f.begin(), s.T_f.end()),
                  *std::min_element(s.p.begin(), s.p.end()),
                  *std::max_element(s.p.begin(), s.p.end()));
    return buf;
  }

  CompiledScenario cs_;
  const ScenarioConfig& cfg_;
  SchemeStepper stepper_;
  StepObserver observer_;
  SparseMatrix pattern_T_, pattern_p_;
  fv::MediumModel medium_;
  ode::WorkCounters diag_work_;
};

}  // namespace

RunResult run_simulation(const ScenarioConfig& cfg, const StepObserver& observer) {
  SimulationLoop loop(cfg, observer);
  return loop.run();
}

}  // namespace georos::sim
