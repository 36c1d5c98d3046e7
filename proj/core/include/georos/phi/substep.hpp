#pragma once

#include <functional>
#include <span>

#include "georos/phi/phi_result.hpp"

namespace georos::phi::detail {

/// One backend evaluation of phi_order(delta*J)*w. `ok` reports whether the
/// backend's own acceptance rule was met for this delta (the absolute budget
/// for Krylov, the weighted-norm degree rule for Leja).
struct ShotOutcome {
  std::vector<double> value;
  double err = 0.0;  // backend-native estimate for this shot
  std::size_t matvecs = 0;
  bool ok = true;
};

using SingleShot =
    std::function<ShotOutcome(double delta, std::span<const double> w, int order, double budget)>;

/// Evaluates phi_order(tau*J)*v by integrating y' = J y + t^{order-1}/(order-1)! v
/// from 0 to tau and dividing by tau^order. The first attempt is the plain
/// single shot at delta = tau; on rejection the step is halved and the
/// linearized system is propagated substep by substep:
///   y <- y + d*phi_1(dJ)(J y + p(t) v) + sum_{j=2..order} d^j p^(j-1)(t) phi_j(dJ) v.
/// `tol_abs` is the absolute error allowance on phi_order(tau*J)*v.
PhiResult integrate_phi(const SingleShot& shot, const MatrixAction& apply_J, double tau,
                        std::span<const double> v, int order, double tol_abs,
                        std::size_t max_substeps, const char* backend_name);

}  // namespace georos::phi::detail
