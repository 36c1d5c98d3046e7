#include <cmath>
#include <stdexcept>

#include "georos/linalg/iterative.hpp"
#include "georos/linalg/vector_ops.hpp"

namespace georos::linalg {

std::pair<std::vector<double>, LinearSolveReport> bicgstab(
    const SparseMatrix& A, std::span<const double> b, std::span<const double> x0,
    const Ilu0* M, const BicgstabOptions& opt) {
  if (!A.square()) throw std::invalid_argument("bicgstab: matrix not square");
  const std::size_t n = A.rows();
  if (b.size() != n || x0.size() != n)
    throw std::invalid_argument("bicgstab: dimension mismatch");
  if (opt.tol <= 0.0) throw std::invalid_argument("bicgstab: tol must be positive");

  std::vector<double> x(x0.begin(), x0.end());
  LinearSolveReport rep;

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    rep.converged = true;
    return {std::move(x), rep};
  }

  auto precond = [&](std::span<const double> r, std::span<double> z) {
    if (M)
      M->apply(r, z);
    else
      std::copy(r.begin(), r.end(), z.begin());
  };

  std::vector<double> r = spmv(A, x);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  std::vector<double> r_hat = r;
  std::vector<double> p(n, 0.0), v(n, 0.0), p_hat(n), s(n), s_hat(n), t(n);

  double rho = 1.0, alpha = 1.0, omega = 1.0;
  const double breakdown_eps = 1e-300;

  auto finish = [&](bool claim_converged) {
    // re-verify with the true residual so the report never overstates
    std::vector<double> rt = spmv(A, x);
    for (std::size_t i = 0; i < n; ++i) rt[i] = b[i] - rt[i];
    rep.final_residual = norm2(rt) / bnorm;
    rep.converged = claim_converged && rep.final_residual <= opt.tol;
  };

  if (norm2(r) / bnorm <= opt.tol) {
    finish(true);
    return {std::move(x), rep};
  }

  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    const double rho_new = dot(r_hat, r);
    if (std::abs(rho_new) < breakdown_eps) {
      finish(false);  // rho breakdown
      rep.iterations = it - 1;
      return {std::move(x), rep};
    }
    if (it == 1) {
      p = r;
    } else {
      const double beta = (rho_new / rho) * (alpha / omega);
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    }
    rho = rho_new;

    precond(p, p_hat);
    spmv(A, p_hat, v);
    const double rhv = dot(r_hat, v);
    if (std::abs(rhv) < breakdown_eps) {
      finish(false);
      rep.iterations = it - 1;
      return {std::move(x), rep};
    }
    alpha = rho / rhv;
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];

    if (norm2(s) / bnorm <= opt.tol) {
      axpy(alpha, p_hat, x);
      rep.iterations = it;
      finish(true);
      if (rep.converged) return {std::move(x), rep};
      // true residual disagreed; keep iterating from the updated x
      r = spmv(A, x);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
      continue;
    }

    precond(s, s_hat);
    spmv(A, s_hat, t);
    const double tt = dot(t, t);
    if (tt < breakdown_eps) {
      finish(false);
      rep.iterations = it;
      return {std::move(x), rep};
    }
    omega = dot(t, s) / tt;
    for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p_hat[i] + omega * s_hat[i];
    for (std::size_t i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
    rep.iterations = it;

    if (norm2(r) / bnorm <= opt.tol) {
      finish(true);
      if (rep.converged) return {std::move(x), rep};
    }
    if (std::abs(omega) < breakdown_eps) {
      finish(false);
      return {std::move(x), rep};
    }
  }

  finish(false);
  return {std::move(x), rep};
}

std::pair<std::vector<double>, LinearSolveReport> bicgstab_ilu0(
    const SparseMatrix& A, std::span<const double> b, std::span<const double> x0,
    double tol, std::size_t max_iter) {
  Ilu0 M(A);
  BicgstabOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  auto [x, rep] = bicgstab(A, b, x0, &M, opt);
  if (!rep.converged) {
    // breakdown or stagnation: one unpreconditioned restart from the best x
    auto [x2, rep2] = bicgstab(A, b, x, nullptr, opt);
    if (rep2.final_residual < rep.final_residual || rep2.converged) {
      rep2.iterations += rep.iterations;
      return {std::move(x2), rep2};
    }
  }
  return {std::move(x), rep};
}

}  // namespace georos::linalg
