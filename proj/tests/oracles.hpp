#pragma once

// Test-only reference computations, kept independent of the library paths
// they are used to check.

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "georos/linalg/dense.hpp"
#include "georos/linalg/sparse.hpp"

namespace oracle {

using georos::linalg::DenseMatrix;
using georos::linalg::SparseMatrix;

inline DenseMatrix densify(const SparseMatrix& A) {
  DenseMatrix D(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    auto cols = A.row_cols(i);
    auto vals = A.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) D(i, cols[k]) = vals[k];
  }
  return D;
}

/// Dense Gaussian elimination with partial pivoting, written plainly.
inline std::vector<double> dense_solve(DenseMatrix A, std::vector<double> b) {
  const std::size_t n = A.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(A(i, k)) > std::fabs(A(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = A(i, k) / A(k, k);
      b[i] -= m * b[k];
      for (std::size_t j = k; j < n; ++j) A(i, j) -= m * A(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    double s = b[kk];
    for (std::size_t j = kk + 1; j < n; ++j) s -= A(kk, j) * b[j];
    b[kk] = s / A(kk, kk);
  }
  return b;
}

inline double rel_err(std::span<const double> x, std::span<const double> ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - ref[i]) * (x[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return std::sqrt(num) / (std::sqrt(den) + 1e-300);
}

inline std::vector<double> random_vector(std::size_t n, unsigned seed,
                                         double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

/// Random sparse dissipative matrix, symmetric-dominant with a mild
/// nonsymmetric part; Gershgorin discs lie in [-width, 0].
inline SparseMatrix random_dissipative(std::size_t n, unsigned seed, double width) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::uniform_real_distribution<double> skew(-0.05, 0.05);
  std::vector<std::size_t> ti, tj;
  std::vector<double> tv;
  std::vector<double> offsum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) {
      const double w = u(rng), s = skew(rng);
      ti.push_back(i);
      tj.push_back(i + 1);
      tv.push_back(w + s);
      ti.push_back(i + 1);
      tj.push_back(i);
      tv.push_back(w - s);
      offsum[i] += std::fabs(w + s);
      offsum[i + 1] += std::fabs(w - s);
    }
  }
  // diagonal placed so each disc [d - r, d + r] sits inside [-width, 0]
  std::uniform_real_distribution<double> slack(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = offsum[i];
    const double lo = -width + r, hi = -r;
    const double d = lo + (hi - lo) * slack(rng);
    ti.push_back(i);
    tj.push_back(i);
    tv.push_back(d);
  }
  return SparseMatrix::from_triplets(n, n, ti, tj, tv);
}

}  // namespace oracle
