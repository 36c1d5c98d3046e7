#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "georos/linalg/sparse.hpp"

namespace georos::linalg {

struct LinearSolveReport {
  std::size_t iterations = 0;
  double final_residual = 0.0;  // ||b - A x||_2 / ||b||_2, re-verified
  bool converged = false;
};

/// Incomplete LU factorization with no fill-in: the factors live on the
/// matrix's own sparsity pattern. Near-zero pivots are replaced by
/// sign(pivot) * max(|pivot|, 1e-12 * row norm) so weak diagonals do not
/// abort the factorization.
class Ilu0 {
 public:
  explicit Ilu0(const SparseMatrix& A);

  /// z = U^{-1} L^{-1} r
  void apply(std::span<const double> r, std::span<double> z) const;
  std::vector<double> apply(std::span<const double> r) const;

 private:
  SparseMatrix lu_;                 // L (unit diagonal, strictly lower) and U share storage
  std::vector<std::size_t> diag_;   // position of the diagonal entry in each row
};

struct BicgstabOptions {
  double tol = 1e-6;          // relative residual target
  std::size_t max_iter = 500;
};

/// Preconditioned BiCGStab; pass nullptr to run unpreconditioned. A rho- or
/// omega-breakdown is reported as non-convergence so the caller can restart.
std::pair<std::vector<double>, LinearSolveReport> bicgstab(
    const SparseMatrix& A, std::span<const double> b, std::span<const double> x0,
    const Ilu0* M, const BicgstabOptions& opt);

/// ILU(0)-preconditioned solve of A x = b starting from x0.
std::pair<std::vector<double>, LinearSolveReport> bicgstab_ilu0(
    const SparseMatrix& A, std::span<const double> b, std::span<const double> x0,
    double tol, std::size_t max_iter);

}  // namespace georos::linalg
