#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "georos/linalg/iterative.hpp"

namespace georos::linalg {

Ilu0::Ilu0(const SparseMatrix& A) : lu_(A) {
  if (!A.square()) throw std::invalid_argument("Ilu0: matrix not square");
  const std::size_t n = A.rows();
  const auto& rp = lu_.row_ptr();
  const auto& ci = lu_.col_idx();
  auto& v = lu_.values();

  diag_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k)
      if (ci[k] == i) {
        diag_[i] = k;
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("Ilu0: missing diagonal entry");
  }

  // IKJ variant restricted to the existing pattern.
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t kk = rp[i]; kk < rp[i + 1] && ci[kk] < i; ++kk) {
      const std::size_t k = ci[kk];
      v[kk] /= v[diag_[k]];
      const double lik = v[kk];
      // subtract lik * U(k, j) for j > k present in row i
      std::size_t pi = kk + 1;
      std::size_t pk = diag_[k] + 1;
      while (pi < rp[i + 1] && pk < rp[k + 1]) {
        if (ci[pi] == ci[pk]) {
          v[pi] -= lik * v[pk];
          ++pi;
          ++pk;
        } else if (ci[pi] < ci[pk]) {
          ++pi;
        } else {
          ++pk;
        }
      }
    }
    // guard the pivot against (near-)zero
    double row_norm = 0.0;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) row_norm += std::abs(v[k]);
    double& piv = v[diag_[i]];
    const double floor = 1e-12 * row_norm;
    if (std::abs(piv) < floor) piv = (piv < 0.0 ? -1.0 : 1.0) * std::max(std::abs(piv), floor);
    if (piv == 0.0) piv = 1e-300;
  }
  // row 0 pivot guard
  if (n > 0) {
    double row_norm = 0.0;
    for (std::size_t k = rp[0]; k < rp[1]; ++k) row_norm += std::abs(v[k]);
    double& piv = v[diag_[0]];
    const double floor = 1e-12 * row_norm;
    if (std::abs(piv) < floor) piv = (piv < 0.0 ? -1.0 : 1.0) * std::max(std::abs(piv), floor);
    if (piv == 0.0) piv = 1e-300;
  }
}

void Ilu0::apply(std::span<const double> r, std::span<double> z) const {
  const std::size_t n = lu_.rows();
  if (r.size() != n || z.size() != n) throw std::invalid_argument("Ilu0::apply: size mismatch");
  const auto& rp = lu_.row_ptr();
  const auto& ci = lu_.col_idx();
  const auto& v = lu_.values();

  // forward solve L y = r (unit diagonal)
  for (std::size_t i = 0; i < n; ++i) {
    double s = r[i];
    for (std::size_t k = rp[i]; k < diag_[i]; ++k) s -= v[k] * z[ci[k]];
    z[i] = s;
  }
  // back solve U z = y
  for (std::size_t ii = n; ii-- > 0;) {
    double s = z[ii];
    for (std::size_t k = diag_[ii] + 1; k < rp[ii + 1]; ++k) s -= v[k] * z[ci[k]];
    z[ii] = s / v[diag_[ii]];
  }
}

std::vector<double> Ilu0::apply(std::span<const double> r) const {
  std::vector<double> z(r.size());
  apply(r, z);
  return z;
}

}  // namespace georos::linalg
