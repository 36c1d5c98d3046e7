#include "georos/ode/steppers.hpp"

#include <cmath>

#include "georos/linalg/vector_ops.hpp"

namespace georos::ode {

using linalg::SparseMatrix;

WorkCounters& WorkCounters::operator+=(const WorkCounters& o) {
  rhs_evals += o.rhs_evals;
  jacobian_builds += o.jacobian_builds;
  newton_iters += o.newton_iters;
  linear_solves += o.linear_solves;
  linear_iters += o.linear_iters;
  phi_matvecs += o.phi_matvecs;
  phi_substeps += o.phi_substeps;
  return *this;
}

namespace {

// I - tau*theta*J with J sparse; the result keeps J's pattern plus the
// diagonal (present in all our patterns).
SparseMatrix shifted_identity_minus(const SparseMatrix& J, double scale) {
  SparseMatrix A = J;
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  auto& v = A.values();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
      v[k] = -scale * v[k];
      if (ci[k] == i) v[k] += 1.0;
    }
  return A;
}

// (1/(tau*gamma))I - J
SparseMatrix stage_matrix(const SparseMatrix& J, double tau, double gamma) {
  SparseMatrix A = J;
  const double shift = 1.0 / (tau * gamma);
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  auto& v = A.values();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
      v[k] = -v[k];
      if (ci[k] == i) v[k] += shift;
    }
  return A;
}

std::vector<double> solve_or_fail(const SparseMatrix& A, const linalg::Ilu0& M,
                                  std::span<const double> b, std::span<const double> x0,
                                  double tol, std::size_t max_iter, const char* who,
                                  WorkCounters* work) {
  linalg::BicgstabOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  auto [x, rep] = linalg::bicgstab(A, b, x0, &M, opt);
  if (work) {
    ++work->linear_solves;
    work->linear_iters += rep.iterations;
  }
  if (!rep.converged)
    throw StepFailure(std::string(who) + ": linear solve stalled at residual " +
                      std::to_string(rep.final_residual));
  return std::move(x);
}

}  // namespace

std::vector<double> theta_euler_step(const RhsFn& f, const JacobianFn& jac,
                                     std::span<const double> y, double t, double tau,
                                     double theta, const NewtonSettings& settings,
                                     WorkCounters* work) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("theta_euler_step: theta must lie in [0,1]");
  if (tau <= 0.0) throw std::invalid_argument("theta_euler_step: tau must be positive");
  const std::size_t n = y.size();

  std::vector<double> fy = f(y, t);
  if (work) ++work->rhs_evals;
  if (theta == 0.0) {  // explicit Euler, no solve
    std::vector<double> out(y.begin(), y.end());
    linalg::axpy(tau, fy, out);
    return out;
  }

  // F(X) = X - tau*theta*f(X, t+tau) - tau*(1-theta)*f(y, t) - y
  std::vector<double> base(y.begin(), y.end());
  linalg::axpy(tau * (1.0 - theta), fy, base);

  std::vector<double> x(y.begin(), y.end());
  const double scale = 1.0 + linalg::norm2(y);
  const std::vector<double> zero(n, 0.0);

  for (std::size_t it = 0; it < settings.max_iter; ++it) {
    std::vector<double> fx = f(x, t + tau);
    if (work) ++work->rhs_evals;
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i)
      residual[i] = x[i] - tau * theta * fx[i] - base[i];
    if (linalg::norm2(residual) <= settings.tol * scale) return x;

    SparseMatrix J = jac(x, t + tau);
    if (work) ++work->jacobian_builds;
    SparseMatrix A = shifted_identity_minus(J, tau * theta);
    linalg::Ilu0 M(A);
    for (double& r : residual) r = -r;
    std::vector<double> dx = solve_or_fail(A, M, residual, zero, settings.lin_tol,
                                           settings.lin_max_iter, "theta_euler", work);
    linalg::axpy(1.0, dx, x);
    if (work) ++work->newton_iters;
  }
  // converged on the last correction?
  std::vector<double> fx = f(x, t + tau);
  if (work) ++work->rhs_evals;
  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) residual[i] = x[i] - tau * theta * fx[i] - base[i];
  if (linalg::norm2(residual) <= settings.tol * scale) return x;
  throw StepFailure("theta_euler: Newton did not converge in " +
                    std::to_string(settings.max_iter) + " iterations");
}

phi::PhiResult KrylovPhiBackend::apply(int order, double tau, std::span<const double> v,
                                       double /*y_inf_norm*/) const {
  return phi::phi_krylov(action_, tau, v, order, opt_);
}

phi::PhiResult LejaPhiBackend::apply(int order, double tau, std::span<const double> v,
                                     double y_inf_norm) const {
  const std::pair<double, double> interval{tau * interval_j_.first,
                                           tau * interval_j_.second};
  return phi::phi_leja(action_, tau, v, order, interval, ctrl_, y_inf_norm);
}

std::vector<double> erem_step(const RhsFn& f, const PhiBackend& phi_backend,
                              std::span<const double> y, double t, double tau,
                              WorkCounters* work) {
  return erem_step_nonautonomous(f, phi_backend, {}, y, t, tau, work);
}

std::vector<double> erem_step_nonautonomous(const RhsFn& f, const PhiBackend& phi_backend,
                                            std::span<const double> df_dt,
                                            std::span<const double> y, double t, double tau,
                                            WorkCounters* work) {
  if (tau <= 0.0) throw std::invalid_argument("erem_step: tau must be positive");
  std::vector<double> fy = f(y, t);
  if (work) ++work->rhs_evals;
  const double y_inf = linalg::norm_inf(y);

  std::vector<double> out(y.begin(), y.end());
  try {
    phi::PhiResult r1 = phi_backend.apply(1, tau, fy, y_inf);
    if (work) {
      work->phi_matvecs += r1.matvec_count;
      work->phi_substeps += r1.substeps;
    }
    linalg::axpy(tau, r1.value, out);
    if (!df_dt.empty() && linalg::norm2(df_dt) > 0.0) {
      phi::PhiResult r2 = phi_backend.apply(2, tau, df_dt, y_inf);
      if (work) {
        work->phi_matvecs += r2.matvec_count;
        work->phi_substeps += r2.substeps;
      }
      linalg::axpy(tau * tau, r2.value, out);
    }
  } catch (const phi::PhiNonConvergence& e) {
    throw StepFailure(std::string("erem: phi evaluation failed: ") + e.what());
  }
  return out;
}

std::vector<double> rosm_step(const RhsFn& f, const SparseMatrix& J,
                              std::span<const double> df_dt, std::span<const double> y,
                              double t, double tau, double gamma,
                              const NewtonSettings& lin, WorkCounters* work) {
  if (gamma <= 0.0) throw std::invalid_argument("rosm_step: gamma must be positive");
  if (tau <= 0.0) throw std::invalid_argument("rosm_step: tau must be positive");
  const std::size_t n = y.size();

  std::vector<double> rhs = f(y, t);
  if (work) ++work->rhs_evals;
  if (!df_dt.empty())
    for (std::size_t i = 0; i < n; ++i) rhs[i] += gamma * tau * df_dt[i];

  SparseMatrix A = shifted_identity_minus(J, tau * gamma);
  linalg::Ilu0 M(A);
  const std::vector<double> zero(n, 0.0);
  std::vector<double> k =
      solve_or_fail(A, M, rhs, zero, lin.lin_tol, lin.lin_max_iter, "rosm", work);

  std::vector<double> out(y.begin(), y.end());
  linalg::axpy(tau, k, out);
  return out;
}

std::pair<std::vector<double>, std::vector<double>> rosenbrock_s_stage_step(
    const RhsFn& f, const SparseMatrix& J, std::span<const double> df_dt,
    std::span<const double> y, double t, double tau, const RosenbrockTableau& tab,
    const NewtonSettings& lin, WorkCounters* work) {
  tab.validate();
  if (tau <= 0.0) throw std::invalid_argument("rosenbrock_step: tau must be positive");
  const std::size_t n = y.size();

  // one matrix and one factorization shared by all stages
  SparseMatrix A = stage_matrix(J, tau, tab.gamma);
  linalg::Ilu0 M(A);
  const std::vector<double> zero(n, 0.0);

  std::vector<std::vector<double>> k(tab.s);
  std::vector<double> arg(n), rhs(n);
  for (std::size_t i = 0; i < tab.s; ++i) {
    std::copy(y.begin(), y.end(), arg.begin());
    for (std::size_t j = 0; j < i; ++j)
      if (tab.a[i][j] != 0.0) linalg::axpy(tab.a[i][j], k[j], arg);
    rhs = f(arg, t + tab.alpha[i] * tau);
    if (work) ++work->rhs_evals;
    for (std::size_t j = 0; j < i; ++j)
      if (tab.c[i][j] != 0.0) linalg::axpy(-tab.c[i][j] / tau, k[j], rhs);
    if (!df_dt.empty() && tab.gamma_i[i] != 0.0)
      linalg::axpy(tau * tab.gamma_i[i], df_dt, rhs);
    k[i] = solve_or_fail(A, M, rhs, zero, lin.lin_tol, lin.lin_max_iter, "rosenbrock", work);
  }

  std::vector<double> y_next(y.begin(), y.end());
  std::vector<double> y_embedded(y.begin(), y.end());
  for (std::size_t i = 0; i < tab.s; ++i) {
    if (tab.b[i] != 0.0) linalg::axpy(tab.b[i], k[i], y_next);
    if (tab.b_hat[i] != 0.0) linalg::axpy(tab.b_hat[i], k[i], y_embedded);
  }
  return {std::move(y_next), std::move(y_embedded)};
}

}  // namespace georos::ode
