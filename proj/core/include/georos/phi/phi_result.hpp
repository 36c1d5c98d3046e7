#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace georos::phi {

/// Action of the Jacobian (or any linear operator): y = J x.
using MatrixAction = std::function<void(std::span<const double>, std::span<double>)>;

/// Result of one phi_i(tau*J)*v evaluation.
struct PhiResult {
  std::vector<double> value;
  double err_estimate = 0.0;    // dimensionless (relative / weighted norm)
  std::size_t matvec_count = 0;
  std::size_t substeps = 1;
};

/// Thrown when substep splitting cannot reach the requested accuracy.
class PhiNonConvergence : public std::runtime_error {
 public:
  PhiNonConvergence(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_estimate(achieved) {}
  double achieved_estimate;
};

}  // namespace georos::phi
