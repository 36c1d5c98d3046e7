#include "georos/fv/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace georos::fv {

using linalg::SparseMatrix;

namespace {

SparseMatrix pattern_from_adjacency(std::size_t n,
                                    const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<std::size_t> rp(n + 1, 0), ci;
  for (std::size_t i = 0; i < n; ++i) rp[i + 1] = rp[i] + adj[i].size();
  ci.reserve(rp[n]);
  for (std::size_t i = 0; i < n; ++i) ci.insert(ci.end(), adj[i].begin(), adj[i].end());
  std::vector<double> v(ci.size(), 0.0);
  return SparseMatrix(n, n, std::move(rp), std::move(ci), std::move(v));
}

std::vector<std::vector<std::size_t>> grid_neighbors(const StructuredGrid& grid) {
  std::vector<std::vector<std::size_t>> nb(grid.cell_count());
  for (const Face& f : grid.interior_faces()) {
    nb[f.owner].push_back(f.neighbor);
    nb[f.neighbor].push_back(f.owner);
  }
  return nb;
}

}  // namespace

SparseMatrix sparsity_pattern_temperature(const StructuredGrid& grid) {
  const std::size_t n = grid.cell_count();
  const auto nb = grid_neighbors(grid);
  std::vector<std::vector<std::size_t>> adj(2 * n);
  for (std::size_t c = 0; c < n; ++c) {
    // T_s row: own stencil in the T_s block, T_f same cell (exchange; the
    // porosity scaling also brings no further coupling at fixed p)
    auto& rs = adj[c];
    rs.push_back(c);
    rs.push_back(n + c);
    for (std::size_t m : nb[c]) rs.push_back(m);
    std::sort(rs.begin(), rs.end());
    // T_f row: conduction + advection stencil in the T_f block, T_s same cell
    auto& rf = adj[n + c];
    rf.push_back(c);
    rf.push_back(n + c);
    for (std::size_t m : nb[c]) rf.push_back(n + m);
    std::sort(rf.begin(), rf.end());
  }
  return pattern_from_adjacency(2 * n, adj);
}

SparseMatrix sparsity_pattern_pressure(const StructuredGrid& grid) {
  const std::size_t n = grid.cell_count();
  const auto nb = grid_neighbors(grid);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t c = 0; c < n; ++c) {
    adj[c].push_back(c);
    for (std::size_t m : nb[c]) adj[c].push_back(m);
    std::sort(adj[c].begin(), adj[c].end());
  }
  return pattern_from_adjacency(n, adj);
}

std::vector<int> color_columns(const SparseMatrix& pattern) {
  const std::size_t n = pattern.cols();
  // columns touching a common row must differ; build column -> rows, then
  // greedily color in natural order
  std::vector<std::vector<std::size_t>> col_rows(n);
  for (std::size_t i = 0; i < pattern.rows(); ++i)
    for (std::size_t j : pattern.row_cols(i)) col_rows[j].push_back(i);

  std::vector<int> color(n, -1);
  std::vector<int> forbidden;  // scratch: colors already used around column j
  for (std::size_t j = 0; j < n; ++j) {
    forbidden.clear();
    for (std::size_t i : col_rows[j])
      for (std::size_t k : pattern.row_cols(i))
        if (color[k] >= 0) forbidden.push_back(color[k]);
    std::sort(forbidden.begin(), forbidden.end());
    int c = 0;
    for (int f : forbidden) {
      if (f == c) ++c;
      else if (f > c) break;
    }
    color[j] = c;
  }
  return color;
}

SparseMatrix fd_jacobian(const SparseMatrix& pattern, const RhsFn& f,
                         std::span<const double> y, double t) {
  const std::size_t n = y.size();
  if (pattern.rows() != n || pattern.cols() != n)
    throw std::invalid_argument("fd_jacobian: pattern size mismatch");

  const std::vector<int> color = color_columns(pattern);
  const int ncolors = 1 + *std::max_element(color.begin(), color.end());

  const std::vector<double> f0 = f(y, t);
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());

  SparseMatrix J = pattern;  // same structure, values filled below
  std::vector<double> yp(y.begin(), y.end());
  std::vector<double> eps_col(n, 0.0);

  // column -> rows map once
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> col_entries(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = pattern.row_cols(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      col_entries[cols[k]].push_back({i, pattern.row_ptr()[i] + k});
  }

  for (int c = 0; c < ncolors; ++c) {
    std::copy(y.begin(), y.end(), yp.begin());
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (color[j] != c) continue;
      eps_col[j] = sqrt_eps * (1.0 + std::abs(y[j]));
      yp[j] += eps_col[j];
      any = true;
    }
    if (!any) continue;
    const std::vector<double> fp = f(yp, t);
    for (std::size_t j = 0; j < n; ++j) {
      if (color[j] != c) continue;
      for (auto [row, pos] : col_entries[j])
        J.values()[pos] = (fp[row] - f0[row]) / eps_col[j];
    }
  }
  return J;
}

}  // namespace georos::fv
