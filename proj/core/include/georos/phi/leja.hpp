#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "georos/phi/phi_result.hpp"

namespace georos::phi {

/// Nested sequence of fast Leja points on the reference interval [-2,2].
/// xi_0 = 2, xi_1 = -2; each further point is the candidate (midpoint of two
/// adjacent accepted points) maximizing the product of distances to all
/// accepted points, and acceptance spawns two new candidate midpoints.
struct LejaSequence {
  std::vector<double> points;
};

/// First M+1 fast Leja points; the sequence is cached process-wide and
/// extended on demand (append-only, guarded).
LejaSequence fast_leja_points(std::size_t M);

/// Divided differences of phi_order(tau * (.)) at the mapped Leja nodes of
/// [alpha, beta]: the first column of the matrix function of the
/// lower-bidiagonal node matrix L_m = tau*(c I + g Lhat), c = (a+b)/2,
/// g = (b-a)/4. Computed through the dense route instead of the recursive
/// difference formula, which cancels below machine precision.
struct DividedDifferences {
  std::vector<double> d;
  double alpha = 0.0, beta = 0.0;
  double tau = 0.0;
  int phi_order = 1;
};

DividedDifferences divided_differences(int order, double tau, double alpha, double beta,
                                       const LejaSequence& xi, std::size_t degree);

struct LejaControl {
  double tol_a = 1e-6;
  double tol_r = 1e-6;
  int p = 2;                       // scheme order in the stopping rule 10^p * err < 1
  std::size_t max_degree = 120;
  std::size_t max_substeps = 1000;
};

/// phi_order(tau*J)*v by Newton interpolation at fast Leja points on the
/// spectral interval [alpha, beta] of tau*J (Gershgorin-estimated by the
/// caller; inflated 1% per side here). Error is measured in the weighted
/// scaled norm with scal = tol_a + tol_r*y_inf_norm, smoothing over the last
/// five degrees; on degree exhaustion the step is split.
PhiResult phi_leja(const MatrixAction& apply_J, double tau, std::span<const double> v,
                   int order, std::pair<double, double> interval, const LejaControl& ctrl,
                   double y_inf_norm);

}  // namespace georos::phi
