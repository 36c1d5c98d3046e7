#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "georos/linalg/dense.hpp"
#include "georos/phi/phi_result.hpp"

namespace georos::phi {

/// Arnoldi decomposition of the Krylov space K_m(J, v) built with modified
/// Gram-Schmidt. `basis` holds m+1 orthonormal vectors (m on happy
/// breakdown), `hbar` is the (m+1)x(m+1) Hessenberg block bordered with
/// h_{m+1,m} in its last row and a zero last column.
struct ArnoldiDecomposition {
  std::vector<std::vector<double>> basis;
  linalg::DenseMatrix hbar;
  std::size_t m = 0;          // dimension actually built
  double h_next = 0.0;        // h_{m+1,m}; zero on happy breakdown
  bool happy_breakdown = false;
};

ArnoldiDecomposition arnoldi(const MatrixAction& apply_J, std::span<const double> v,
                             std::size_t m);

struct KrylovOptions {
  std::size_t m = 10;               // fixed subspace dimension
  double tol = 1e-6;                // relative to ||v||_2
  std::size_t max_substeps = 1000;
};

/// phi_order(tau*J)*v by projection: ||v|| V_{m+1} phi_order(tau Hbar) e1.
/// The error estimate is the magnitude of the trailing component of the
/// small phi vector (which carries the h_{m+1,m} truncation factor); when it
/// exceeds the tolerance the step is split and the linearized system is
/// propagated substep by substep.
PhiResult phi_krylov(const MatrixAction& apply_J, double tau, std::span<const double> v,
                     int order, const KrylovOptions& opt);

PhiResult phi_krylov(const MatrixAction& apply_J, double tau, std::span<const double> v,
                     int order, std::size_t m, double tol);

/// Directional derivative of f at y_n along v by finite differences:
/// (f(y_n + eps v, t_n) - f(y_n, t_n)) / eps, or the central variant.
/// eps = 0 selects eps = sqrt(machine eps) * (1 + ||y_n||_inf) / ||v||_2.
using RhsCallback =
    std::function<std::vector<double>(std::span<const double>, double)>;
std::vector<double> jacobian_free_action(const RhsCallback& f, std::span<const double> y_n,
                                         double t_n, std::span<const double> v, double eps,
                                         bool central = false);

}  // namespace georos::phi
