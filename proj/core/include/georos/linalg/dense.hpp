#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace georos::linalg {

/// Small square row-major dense matrix. Sized for projected operators and
/// divided-difference blocks, not for the full discretized system.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<const double> data() const { return a_; }
  std::span<double> data() { return a_; }

  double one_norm() const;  // max column sum of |a_ij|
  bool all_finite() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B);
std::vector<double> matvec(const DenseMatrix& A, std::span<const double> x);

/// Solves A*X = B in place (X overwrites B) by LU with partial pivoting.
void lu_solve_in_place(DenseMatrix A, DenseMatrix& B);
std::vector<double> lu_solve(DenseMatrix A, std::vector<double> b);

}  // namespace georos::linalg
