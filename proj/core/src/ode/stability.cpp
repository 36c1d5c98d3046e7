#include "georos/ode/stability.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "georos/ode/tableau.hpp"

namespace georos::ode {

void SchemeId::validate() const {
  if (kind == SchemeKind::ThetaEuler && (theta < 0.0 || theta > 1.0))
    throw std::invalid_argument("SchemeId: theta must lie in [0,1]");
  if (kind == SchemeKind::Rosm && gamma <= 0.0)
    throw std::invalid_argument("SchemeId: gamma must be positive");
}

std::string SchemeId::label() const {
  switch (kind) {
    case SchemeKind::ThetaEuler: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "theta%g", theta);
      return buf;
    }
    case SchemeKind::Erem:
      return backend == PhiBackendKind::Krylov ? "erem-krylov" : "erem-leja";
    case SchemeKind::Rosm: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "rosm%g", gamma);
      return buf;
    }
    case SchemeKind::Ros2_1:
      return "ros2";
    case SchemeKind::Ros3p:
      return "ros3p";
  }
  return "unknown";
}

namespace {

// R(z) of an s-stage Rosenbrock scheme via the scalar stage recursion on
// y' = z*y with tau = 1, y = 1.
std::complex<double> rosenbrock_r(const RosenbrockTableau& tab, std::complex<double> z) {
  using C = std::complex<double>;
  const C A = 1.0 / tab.gamma - z;
  if (std::abs(A) < 1e-300)
    throw std::domain_error("stability_function: pole of the rational function");
  std::vector<C> k(tab.s);
  for (std::size_t i = 0; i < tab.s; ++i) {
    C arg{1.0, 0.0};
    for (std::size_t j = 0; j < i; ++j) arg += tab.a[i][j] * k[j];
    C rhs = z * arg;
    for (std::size_t j = 0; j < i; ++j) rhs -= tab.c[i][j] * k[j];
    k[i] = rhs / A;
  }
  C r{1.0, 0.0};
  for (std::size_t i = 0; i < tab.s; ++i) r += tab.b[i] * k[i];
  return r;
}

}  // namespace

std::complex<double> stability_function(const SchemeId& scheme, std::complex<double> z) {
  scheme.validate();
  using C = std::complex<double>;
  switch (scheme.kind) {
    case SchemeKind::ThetaEuler: {
      const C den = 1.0 - scheme.theta * z;
      if (std::abs(den) < 1e-300)
        throw std::domain_error("stability_function: pole at 1 - theta z = 0");
      return (1.0 + z * (1.0 - scheme.theta)) / den;
    }
    case SchemeKind::Erem:
      return std::exp(z);
    case SchemeKind::Rosm: {
      const C den = 1.0 - scheme.gamma * z;
      if (std::abs(den) < 1e-300)
        throw std::domain_error("stability_function: pole at 1 - gamma z = 0");
      return (1.0 + z * (1.0 - scheme.gamma)) / den;
    }
    case SchemeKind::Ros2_1:
      return rosenbrock_r(ros2_1(), z);
    case SchemeKind::Ros3p:
      return rosenbrock_r(ros3p(), z);
  }
  throw std::invalid_argument("stability_function: unknown scheme");
}

}  // namespace georos::ode
