#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "georos/linalg/iterative.hpp"
#include "georos/linalg/sparse.hpp"
#include "georos/ode/tableau.hpp"
#include "georos/phi/krylov.hpp"
#include "georos/phi/leja.hpp"

namespace georos::ode {

using RhsFn = std::function<std::vector<double>(std::span<const double>, double)>;
using JacobianFn = std::function<linalg::SparseMatrix(std::span<const double>, double)>;

/// Raised when a step cannot be completed (Newton stall, linear-solve or
/// phi-evaluation failure); the driving loop reacts by halving the step.
class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NewtonSettings {
  double tol = 1e-6;  // absolute and relative, mixed criterion
  std::size_t max_iter = 25;
  double lin_tol = 1e-6;
  std::size_t lin_max_iter = 500;
};

struct WorkCounters {
  std::size_t rhs_evals = 0;
  std::size_t jacobian_builds = 0;
  std::size_t newton_iters = 0;
  std::size_t linear_solves = 0;
  std::size_t linear_iters = 0;
  std::size_t phi_matvecs = 0;
  std::size_t phi_substeps = 0;
  WorkCounters& operator+=(const WorkCounters& o);
};

/// theta-Euler step: solves X - tau*theta*f(X,t+tau) - tau*(1-theta)*f(y,t)
/// - y = 0 by Newton with ILU(0)-preconditioned BiCGStab inner solves;
/// theta = 0 short-circuits to explicit Euler.
std::vector<double> theta_euler_step(const RhsFn& f, const JacobianFn& jac,
                                     std::span<const double> y, double t, double tau,
                                     double theta, const NewtonSettings& settings,
                                     WorkCounters* work = nullptr);

/// Interface over the two phi_1/phi_2 action backends so the exponential
/// steppers stay backend-agnostic.
class PhiBackend {
 public:
  virtual ~PhiBackend() = default;
  virtual phi::PhiResult apply(int order, double tau, std::span<const double> v,
                               double y_inf_norm) const = 0;
};

class KrylovPhiBackend final : public PhiBackend {
 public:
  KrylovPhiBackend(phi::MatrixAction action, phi::KrylovOptions opt)
      : action_(std::move(action)), opt_(opt) {}
  phi::PhiResult apply(int order, double tau, std::span<const double> v,
                       double y_inf_norm) const override;

 private:
  phi::MatrixAction action_;
  phi::KrylovOptions opt_;
};

class LejaPhiBackend final : public PhiBackend {
 public:
  /// interval_j bounds the spectrum of J itself; it is scaled by tau per call.
  LejaPhiBackend(phi::MatrixAction action, std::pair<double, double> interval_j,
                 phi::LejaControl ctrl)
      : action_(std::move(action)), interval_j_(interval_j), ctrl_(ctrl) {}
  phi::PhiResult apply(int order, double tau, std::span<const double> v,
                       double y_inf_norm) const override;

 private:
  phi::MatrixAction action_;
  std::pair<double, double> interval_j_;
  phi::LejaControl ctrl_;
};

/// Exponential Rosenbrock-Euler step for autonomous systems:
/// y + tau*phi_1(tau*J)*f(y) -- a single phi action per step.
std::vector<double> erem_step(const RhsFn& f, const PhiBackend& phi,
                              std::span<const double> y, double t, double tau,
                              WorkCounters* work = nullptr);

/// Non-autonomous variant: y + tau*phi_1(tau*J)*f + tau^2*phi_2(tau*J)*df_dt.
/// An empty df_dt reduces exactly to the autonomous step.
std::vector<double> erem_step_nonautonomous(const RhsFn& f, const PhiBackend& phi,
                                            std::span<const double> df_dt,
                                            std::span<const double> y, double t, double tau,
                                            WorkCounters* work = nullptr);

/// One-stage Rosenbrock step y + tau*(I - tau*gamma*J)^{-1}[f + gamma*tau*df_dt]
/// (one linear solve). Empty df_dt means an autonomous right-hand side.
std::vector<double> rosm_step(const RhsFn& f, const linalg::SparseMatrix& J,
                              std::span<const double> df_dt, std::span<const double> y,
                              double t, double tau, double gamma,
                              const NewtonSettings& lin, WorkCounters* work = nullptr);

/// s-stage Rosenbrock step; all stages share the matrix (1/(tau*gamma))I - J
/// and its ILU(0) factorization. Returns the order-p solution and the
/// embedded order-(p-1) companion.
std::pair<std::vector<double>, std::vector<double>> rosenbrock_s_stage_step(
    const RhsFn& f, const linalg::SparseMatrix& J, std::span<const double> df_dt,
    std::span<const double> y, double t, double tau, const RosenbrockTableau& tab,
    const NewtonSettings& lin, WorkCounters* work = nullptr);

}  // namespace georos::ode
