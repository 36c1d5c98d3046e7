#include "georos/linalg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace georos::linalg {

SparseMatrix::SparseMatrix(std::size_t n_rows, std::size_t n_cols,
                           std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> col_idx, std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != n_rows_ + 1)
    throw std::invalid_argument("SparseMatrix: row_ptr length must be n_rows+1");
  if (col_idx_.size() != values_.size())
    throw std::invalid_argument("SparseMatrix: col_idx and values length mismatch");
  if (row_ptr_.front() != 0 || row_ptr_.back() != col_idx_.size())
    throw std::invalid_argument("SparseMatrix: inconsistent row_ptr");
  for (std::size_t i = 0; i < n_rows_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1])
      throw std::invalid_argument("SparseMatrix: row_ptr not monotone");
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= n_cols_)
        throw std::invalid_argument("SparseMatrix: column index out of range");
      if (k > row_ptr_[i] && col_idx_[k - 1] >= col_idx_[k])
        throw std::invalid_argument("SparseMatrix: columns not strictly increasing");
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t n_rows, std::size_t n_cols,
                                         std::span<const std::size_t> rows,
                                         std::span<const std::size_t> cols,
                                         std::span<const double> vals) {
  if (rows.size() != cols.size() || rows.size() != vals.size())
    throw std::invalid_argument("from_triplets: array length mismatch");

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows[a] != rows[b] ? rows[a] < rows[b] : cols[a] < cols[b];
  });

  std::vector<std::size_t> rp(n_rows + 1, 0), ci;
  std::vector<double> v;
  ci.reserve(rows.size());
  v.reserve(rows.size());
  std::size_t last_row = n_rows;  // sentinel: no entry appended yet
  for (std::size_t t : order) {
    if (rows[t] >= n_rows || cols[t] >= n_cols)
      throw std::invalid_argument("from_triplets: index out of range");
    if (last_row == rows[t] && !ci.empty() && ci.back() == cols[t]) {
      v.back() += vals[t];  // duplicate entry, accumulate
      continue;
    }
    ci.push_back(cols[t]);
    v.push_back(vals[t]);
    rp[rows[t] + 1]++;
    last_row = rows[t];
  }
  for (std::size_t i = 0; i < n_rows; ++i) rp[i + 1] += rp[i];
  return SparseMatrix(n_rows, n_cols, std::move(rp), std::move(ci), std::move(v));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::size_t> rp(n + 1), ci(n);
  std::vector<double> v(n, 1.0);
  for (std::size_t i = 0; i <= n; ++i) rp[i] = i;
  for (std::size_t i = 0; i < n; ++i) ci[i] = i;
  return SparseMatrix(n, n, std::move(rp), std::move(ci), std::move(v));
}

SparseMatrix SparseMatrix::tridiag(std::size_t n, double lower, double diag, double upper) {
  std::vector<std::size_t> rp(n + 1, 0), ci;
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      ci.push_back(i - 1);
      v.push_back(lower);
    }
    ci.push_back(i);
    v.push_back(diag);
    if (i + 1 < n) {
      ci.push_back(i + 1);
      v.push_back(upper);
    }
    rp[i + 1] = ci.size();
  }
  return SparseMatrix(n, n, std::move(rp), std::move(ci), std::move(v));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  auto cols = row_cols(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return values_[row_ptr_[i] + static_cast<std::size_t>(it - cols.begin())];
}

void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
  if (x.size() != A.cols() || y.size() != A.rows())
    throw std::invalid_argument("spmv: dimension mismatch");
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  const auto& v = A.values();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += v[k] * x[ci[k]];
    y[i] = s;
  }
}

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x) {
  std::vector<double> y(A.rows());
  spmv(A, x, y);
  return y;
}

std::pair<double, double> gershgorin_interval(const SparseMatrix& A) {
  if (!A.square()) throw std::invalid_argument("gershgorin_interval: matrix not square");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    auto cols = A.row_cols(i);
    auto vals = A.row_vals(i);
    double diag = 0.0, radius = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == i)
        diag = vals[k];
      else
        radius += std::abs(vals[k]);
    }
    lo = std::min(lo, diag - radius);
    hi = std::max(hi, diag + radius);
  }
  if (A.rows() == 0) return {0.0, 0.0};
  return {lo, hi};
}

}  // namespace georos::linalg
