#pragma once

#include <functional>
#include <span>
#include <vector>

#include "georos/fv/grid.hpp"
#include "georos/linalg/sparse.hpp"

namespace georos::fv {

using RhsFn = std::function<std::vector<double>(std::span<const double>, double)>;

/// Sparsity pattern of the coupled (T_s, T_f) system: 7-point conduction
/// stencil per block plus the same-cell exchange coupling, and the advective
/// neighbour coupling in the T_f block.
linalg::SparseMatrix sparsity_pattern_temperature(const StructuredGrid& grid);

/// Sparsity pattern of the pressure system: 7-point flux stencil.
linalg::SparseMatrix sparsity_pattern_pressure(const StructuredGrid& grid);

/// Distance-2 greedy coloring of the pattern's columns: two columns share a
/// color only when no row contains entries in both.
std::vector<int> color_columns(const linalg::SparseMatrix& pattern);

/// Forward-difference Jacobian on a fixed sparsity pattern; all columns of a
/// color are perturbed in one evaluation of f.
linalg::SparseMatrix fd_jacobian(const linalg::SparseMatrix& pattern, const RhsFn& f,
                                 std::span<const double> y, double t);

}  // namespace georos::fv
