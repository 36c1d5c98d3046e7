#pragma once

#include <cstddef>
#include <vector>

namespace georos::ode {

/// Coefficients of an s-stage Rosenbrock-type method with an embedded
/// lower-order companion. a and c are stored as full s x s blocks (their
/// diagonals are carried for reference but only the strictly lower parts
/// enter the stage equations).
struct RosenbrockTableau {
  std::size_t s = 0;
  double gamma = 0.0;
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> c;
  std::vector<double> alpha;    // stage abscissae
  std::vector<double> gamma_i;  // time-derivative shift coefficients
  std::vector<double> b;        // order-p weights
  std::vector<double> b_hat;    // embedded order-(p-1) weights
  int order = 0;

  void validate() const;  // throws std::invalid_argument on shape mismatch
};

/// L-stable second-order scheme with first-order embedding.
RosenbrockTableau ros2_1();

/// A-stable third-order scheme, built to dodge order reduction, with
/// second-order embedding.
RosenbrockTableau ros3p();

}  // namespace georos::ode
