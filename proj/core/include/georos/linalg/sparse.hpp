#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace georos::linalg {

/// Compressed sparse row matrix. Column indices within each row are kept
/// strictly increasing so that incomplete factorizations are deterministic.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Takes ownership of pre-built CSR arrays and validates the invariants
  /// (sorted columns, index bounds, matching array lengths).
  SparseMatrix(std::size_t n_rows, std::size_t n_cols,
               std::vector<std::size_t> row_ptr, std::vector<std::size_t> col_idx,
               std::vector<double> values);

  /// Builds from coordinate triplets; duplicate entries are summed.
  static SparseMatrix from_triplets(std::size_t n_rows, std::size_t n_cols,
                                    std::span<const std::size_t> rows,
                                    std::span<const std::size_t> cols,
                                    std::span<const double> vals);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix tridiag(std::size_t n, double lower, double diag, double upper);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  std::size_t nnz() const { return values_.size(); }
  bool square() const { return n_rows_ == n_cols_; }

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_vals(std::size_t i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  /// Value at (i,j), zero when the entry is not stored.
  double at(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// y = A*x
void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y);
std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x);

/// Union bound of the real projections of all Gershgorin discs:
/// alpha = min_i(a_ii - sum_{j!=i}|a_ij|), beta = max_i(a_ii + sum_{j!=i}|a_ij|).
/// Every real eigenvalue of A lies in [alpha, beta].
std::pair<double, double> gershgorin_interval(const SparseMatrix& A);

}  // namespace georos::linalg
