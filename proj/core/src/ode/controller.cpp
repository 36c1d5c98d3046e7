#include "georos/ode/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace georos::ode {

StepDecision adapt_step(const StepController& ctrl, double err, int order) {
  if (err < 0.0) throw std::invalid_argument("adapt_step: err must be >= 0");
  if (order < 1) throw std::invalid_argument("adapt_step: order must be >= 1");

  StepDecision d;
  d.accept = err <= 1.0;
  double factor;
  if (err == 0.0) {
    factor = ctrl.max_factor;
  } else {
    factor = ctrl.safety * std::pow(err, -1.0 / order);
    factor = std::clamp(factor, ctrl.min_factor, ctrl.max_factor);
  }
  d.tau_next = ctrl.tau * factor;
  return d;
}

double weighted_error_norm(std::span<const double> diff, std::span<const double> y_old,
                           std::span<const double> y_new, double tol_a, double tol_r) {
  const std::size_t n = diff.size();
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double scal = tol_a + tol_r * std::max(std::abs(y_old[i]), std::abs(y_new[i]));
    const double e = diff[i] / scal;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace georos::ode
