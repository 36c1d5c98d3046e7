#pragma once

#include <span>

namespace georos::ode {

/// Standard error control and step prediction state. err is the weighted
/// norm of y - y_embedded; accept iff err <= 1.
struct StepController {
  double tol_a = 1e-6;
  double tol_r = 1e-6;
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
  double tau = 0.0;  // current step [s]
};

struct StepDecision {
  bool accept = false;
  double tau_next = 0.0;
};

/// accept iff err <= 1; tau_next = tau * clamp(safety * err^(-1/p), min, max).
StepDecision adapt_step(const StepController& ctrl, double err, int order);

/// Weighted RMS norm of diff with scal_i = tol_a + tol_r*max(|y_old_i|, |y_new_i|).
double weighted_error_norm(std::span<const double> diff, std::span<const double> y_old,
                           std::span<const double> y_new, double tol_a, double tol_r);

}  // namespace georos::ode
