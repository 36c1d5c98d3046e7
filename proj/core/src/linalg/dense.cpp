#include "georos/linalg/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace georos::linalg {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix I(n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

double DenseMatrix::one_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool DenseMatrix::all_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
  const std::size_t n = A.size();
  DenseMatrix C(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = A(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

std::vector<double> matvec(const DenseMatrix& A, std::span<const double> x) {
  const std::size_t n = A.size();
  if (x.size() != n) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

void lu_solve_in_place(DenseMatrix A, DenseMatrix& B) {
  const std::size_t n = A.size();
  if (B.size() != n) throw std::invalid_argument("lu_solve: dimension mismatch");
  std::vector<std::size_t> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
    piv[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
    const double pivot = A(k, k);
    if (pivot == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = A(i, k) / pivot;
      A(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= m * A(k, j);
    }
  }
  // apply row swaps to B, then forward/back substitute column by column
  for (std::size_t k = 0; k < n; ++k)
    if (piv[k] != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(B(k, j), B(piv[k], j));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = A(i, k);
      if (m == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) B(i, j) -= m * B(k, j);
    }
  for (std::size_t kk = n; kk-- > 0;) {
    const double d = A(kk, kk);
    for (std::size_t j = 0; j < n; ++j) B(kk, j) /= d;
    for (std::size_t i = 0; i < kk; ++i) {
      const double m = A(i, kk);
      if (m == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) B(i, j) -= m * B(kk, j);
    }
  }
}

std::vector<double> lu_solve(DenseMatrix A, std::vector<double> b) {
  const std::size_t n = A.size();
  if (b.size() != n) throw std::invalid_argument("lu_solve: dimension mismatch");
  DenseMatrix B(n);
  for (std::size_t i = 0; i < n; ++i) B(i, 0) = b[i];
  // solve with a single right-hand side packed in the first column
  std::vector<std::size_t> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
    piv[k] = p;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
      std::swap(b[k], b[p]);
    }
    const double pivot = A(k, k);
    if (pivot == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = A(i, k) / pivot;
      b[i] -= m * b[k];
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= m * A(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    double s = b[kk];
    for (std::size_t j = kk + 1; j < n; ++j) s -= A(kk, j) * b[j];
    b[kk] = s / A(kk, kk);
  }
  return b;
}

}  // namespace georos::linalg
