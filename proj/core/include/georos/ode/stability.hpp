#pragma once

#include <complex>
#include <string>

namespace georos::ode {

enum class SchemeKind { ThetaEuler, Erem, Rosm, Ros2_1, Ros3p };
enum class PhiBackendKind { Krylov, Leja };

/// Identifies one time-integration scheme with its parameters.
struct SchemeId {
  SchemeKind kind = SchemeKind::ThetaEuler;
  double theta = 1.0;                              // for ThetaEuler, in [0,1]
  double gamma = 1.0;                              // for Rosm, > 0
  PhiBackendKind backend = PhiBackendKind::Krylov;  // for Erem

  void validate() const;
  std::string label() const;  // stable name used in reports and CSV
};

/// Stability function R(z): (1+z(1-theta))/(1-theta z) for theta-Euler, e^z
/// for the exponential Rosenbrock-Euler scheme, (1+z(1-gamma))/(1-gamma z)
/// for one-stage Rosenbrock; the multi-stage schemes evaluate their rational
/// function through the scalar stage recursion. Throws std::domain_error at
/// a pole of the rational function.
std::complex<double> stability_function(const SchemeId& scheme, std::complex<double> z);

}  // namespace georos::ode
