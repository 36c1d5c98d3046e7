#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include <doctest.h>

#include "georos/linalg/expm.hpp"
#include "georos/linalg/vector_ops.hpp"
#include "georos/ode/controller.hpp"
#include "georos/ode/stability.hpp"
#include "georos/ode/steppers.hpp"
#include "georos/ode/tableau.hpp"
#include "oracles.hpp"

using namespace georos;
using linalg::SparseMatrix;

namespace {

SparseMatrix scalar_matrix(double v) {
  return SparseMatrix::from_triplets(1, 1, std::vector<std::size_t>{0},
                                     std::vector<std::size_t>{0}, std::vector<double>{v});
}

ode::RhsFn dahlquist(double lambda) {
  return [lambda](std::span<const double> y, double) {
    return std::vector<double>{lambda * y[0]};
  };
}

double fit_slope(const std::vector<double>& taus, const std::vector<double>& errs) {
  // least-squares slope of log(err) vs log(tau)
  const std::size_t n = taus.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(taus[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("tableaus reproduce the printed coefficient digits") {
  const ode::RosenbrockTableau r2 = ode::ros2_1();
  struct Pin {
    double value;
    const char* printed;
  };
  const Pin pins2[] = {
      {r2.gamma, "1.707106781186547e+00"},
      {r2.a[1][0], "5.857864376269050e-01"},
      {r2.c[0][0], "5.857864376269050e-01"},
      {r2.c[1][0], "1.171572875253810e+00"},
      {r2.c[1][1], "5.857864376269050e-01"},
      {r2.gamma_i[0], "1.707106781186547e+00"},
      {r2.gamma_i[1], "-1.707106781186547e+00"},
      {r2.b[0], "8.786796564403575e-01"},
      {r2.b[1], "2.928932188134525e-01"},
      {r2.b_hat[0], "5.857864376269050e-01"},
  };
  for (const Pin& p : pins2) CHECK(p.value == std::strtod(p.printed, nullptr));
  CHECK(r2.alpha[0] == 0.0);
  CHECK(r2.alpha[1] == 1.0);
  CHECK(r2.b_hat[1] == 0.0);
  // string round-trip at 15 significant digits
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15e", r2.gamma);
  CHECK(std::string(buf) == "1.707106781186547e+00");

  const ode::RosenbrockTableau r3 = ode::ros3p();
  const Pin pins3[] = {
      {r3.gamma, "7.886751345948129e-01"},
      {r3.a[1][0], "1.267949192431123e+00"},
      {r3.a[2][0], "1.267949192431123e+00"},
      {r3.c[0][0], "1.267949192431123e+00"},
      {r3.c[1][0], "1.607695154586736e+00"},
      {r3.c[1][1], "1.267949192431123e+00"},
      {r3.c[2][0], "3.464101615137755e+00"},
      {r3.c[2][1], "1.732050807568877e+00"},
      {r3.c[2][2], "1.267949192431123e+00"},
      {r3.gamma_i[0], "7.886751345948129e-01"},
      {r3.gamma_i[1], "-2.113248654051871e-01"},
      {r3.gamma_i[2], "-1.077350269189626e+00"},
      {r3.b[0], "2"},
      {r3.b[1], "5.773502691896258e-01"},
      {r3.b[2], "4.226497308103742e-01"},
      {r3.b_hat[0], "2.113248654051871e+00"},
      {r3.b_hat[1], "1"},
      {r3.b_hat[2], "4.226497308103742e-01"},
  };
  for (const Pin& p : pins3) CHECK(p.value == std::strtod(p.printed, nullptr));
  CHECK(r3.a[2][1] == 0.0);
  CHECK(r3.alpha[1] == 1.0);
  CHECK(r3.alpha[2] == 1.0);
}

TEST_CASE("theta_euler_step") {
  auto jac = [](std::span<const double>, double) { return scalar_matrix(-1.0); };
  const ode::NewtonSettings settings{1e-12, 50, 1e-13, 100};

  SUBCASE("f = 0 keeps y for any theta") {
    auto f0 = [](std::span<const double> y, double) {
      return std::vector<double>(y.size(), 0.0);
    };
    auto j0 = [](std::span<const double>, double) { return scalar_matrix(0.0); };
    for (double theta : {0.0, 0.5, 1.0}) {
      const std::vector<double> y1 =
          ode::theta_euler_step(f0, j0, std::vector<double>{2.5}, 0.0, 0.3, theta, settings);
      CHECK(y1[0] == doctest::Approx(2.5).epsilon(1e-14));
    }
  }
  SUBCASE("implicit Euler on y' = -y") {
    const std::vector<double> y1 = ode::theta_euler_step(
        dahlquist(-1.0), jac, std::vector<double>{1.0}, 0.0, 0.1, 1.0, settings);
    CHECK(y1[0] == doctest::Approx(1.0 / 1.1).epsilon(1e-10));
  }
  SUBCASE("trapezoid closed form") {
    const double tau = 0.2, lambda = -1.0;
    const std::vector<double> y1 = ode::theta_euler_step(
        dahlquist(lambda), jac, std::vector<double>{1.0}, 0.0, tau, 0.5, settings);
    const double expected = (1.0 + tau * lambda / 2.0) / (1.0 - tau * lambda / 2.0);
    CHECK(y1[0] == doctest::Approx(expected).epsilon(1e-10));
  }
  SUBCASE("Newton stall raises StepFailure") {
    // y' = y^2 with a step far beyond the blow-up time
    auto f = [](std::span<const double> y, double) {
      return std::vector<double>{y[0] * y[0]};
    };
    auto j = [](std::span<const double> y, double) { return scalar_matrix(2.0 * y[0]); };
    ode::NewtonSettings tight{1e-14, 3, 1e-13, 50};
    CHECK_THROWS_AS(
        ode::theta_euler_step(f, j, std::vector<double>{1.0}, 0.0, 10.0, 1.0, tight),
        ode::StepFailure);
  }
  SUBCASE("work counters") {
    ode::WorkCounters w;
    (void)ode::theta_euler_step(dahlquist(-1.0), jac, std::vector<double>{1.0}, 0.0, 0.1,
                                1.0, settings, &w);
    CHECK(w.newton_iters >= 1);
    CHECK(w.linear_solves >= 1);
  }
}

namespace {

class DenseActionBackend final : public ode::PhiBackend {
 public:
  explicit DenseActionBackend(SparseMatrix J) : J_(std::move(J)) {}
  phi::PhiResult apply(int order, double tau, std::span<const double> v,
                       double) const override {
    linalg::DenseMatrix D = oracle::densify(J_);
    D *= tau;
    phi::PhiResult r;
    r.value = linalg::dense_phi_action(order, D, v);
    return r;
  }

 private:
  SparseMatrix J_;
};

}  // namespace

TEST_CASE("erem_step") {
  SUBCASE("f = 0 keeps y") {
    auto f0 = [](std::span<const double> y, double) {
      return std::vector<double>(y.size(), 0.0);
    };
    const DenseActionBackend backend(scalar_matrix(0.0));
    const std::vector<double> y1 = ode::erem_step(f0, backend, std::vector<double>{3.0},
                                                  0.0, 0.7);
    CHECK(y1[0] == 3.0);
  }
  SUBCASE("scalar semilinear: y' = -y + 1 from 0") {
    auto f = [](std::span<const double> y, double) {
      return std::vector<double>{1.0 - y[0]};
    };
    const DenseActionBackend backend(scalar_matrix(-1.0));
    const std::vector<double> y1 =
        ode::erem_step(f, backend, std::vector<double>{0.0}, 0.0, 0.5);
    CHECK(y1[0] == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-12));
  }
  SUBCASE("linear system: one step is the exact propagator") {
    const std::size_t n = 40;
    const SparseMatrix L = oracle::random_dissipative(n, 7, 10.0);
    auto f = [&L](std::span<const double> y, double) { return linalg::spmv(L, y); };
    const DenseActionBackend backend(L);
    const std::vector<double> y0 = oracle::random_vector(n, 8);
    const double tau = 0.6;
    const std::vector<double> y1 = ode::erem_step(f, backend, y0, 0.0, tau);
    linalg::DenseMatrix D = oracle::densify(L);
    D *= tau;
    const std::vector<double> exact = linalg::matvec(linalg::dense_expm(D), y0);
    CHECK(oracle::rel_err(y1, exact) < 1e-11);
  }
  SUBCASE("non-autonomous: zero df_dt reduces to the autonomous step") {
    auto f = [](std::span<const double> y, double) {
      return std::vector<double>{-2.0 * y[0] + 1.0};
    };
    const DenseActionBackend backend(scalar_matrix(-2.0));
    const std::vector<double> a =
        ode::erem_step(f, backend, std::vector<double>{0.3}, 0.0, 0.4);
    const std::vector<double> b = ode::erem_step_nonautonomous(
        f, backend, std::vector<double>{0.0}, std::vector<double>{0.3}, 0.0, 0.4);
    CHECK(a[0] == b[0]);
  }
  SUBCASE("polynomial exactness: y' = t from 0 over one unit step") {
    auto f = [](std::span<const double>, double t) { return std::vector<double>{t}; };
    const DenseActionBackend backend(scalar_matrix(0.0));
    const std::vector<double> y1 = ode::erem_step_nonautonomous(
        f, backend, std::vector<double>{1.0}, std::vector<double>{0.0}, 0.0, 1.0);
    CHECK(y1[0] == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("y' = y + t against variation of constants") {
    auto f = [](std::span<const double> y, double t) {
      return std::vector<double>{y[0] + t};
    };
    const DenseActionBackend backend(scalar_matrix(1.0));
    const double y0 = 0.7, t0 = 0.3, tau = 0.25;
    const std::vector<double> y1 = ode::erem_step_nonautonomous(
        f, backend, std::vector<double>{1.0}, std::vector<double>{y0}, t0, tau);
    // exact: y(t) = (y0 + t0 + 1) e^{t - t0} - t - 1
    const double exact = (y0 + t0 + 1.0) * std::exp(tau) - (t0 + tau) - 1.0;
    CHECK(y1[0] == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("rosm_step") {
  const ode::NewtonSettings lin{1e-12, 50, 1e-13, 100};
  SUBCASE("f = 0 keeps y") {
    auto f0 = [](std::span<const double> y, double) {
      return std::vector<double>(y.size(), 0.0);
    };
    const std::vector<double> y1 = ode::rosm_step(f0, scalar_matrix(0.0), {},
                                                  std::vector<double>{1.5}, 0.0, 0.3, 1.0,
                                                  lin);
    CHECK(y1[0] == 1.5);
  }
  SUBCASE("matches the stability function on scalar problems") {
    for (double gamma : {0.5, 1.0}) {
      for (double z : {-0.5, -2.0, -10.0}) {
        const double tau = 0.25;
        const double lambda = z / tau;
        const std::vector<double> y1 =
            ode::rosm_step(dahlquist(lambda), scalar_matrix(lambda), {},
                           std::vector<double>{1.0}, 0.0, tau, gamma, lin);
        ode::SchemeId s;
        s.kind = ode::SchemeKind::Rosm;
        s.gamma = gamma;
        const double r = ode::stability_function(s, {z, 0.0}).real();
        CHECK(y1[0] == doctest::Approx(r).epsilon(1e-12));
      }
    }
  }
  SUBCASE("gamma = 1/2 coincides with the trapezoid value") {
    const double tau = 0.2, lambda = -1.0;
    const std::vector<double> y1 =
        ode::rosm_step(dahlquist(lambda), scalar_matrix(lambda), {},
                       std::vector<double>{1.0}, 0.0, tau, 0.5, lin);
    const double trap = (1.0 + tau * lambda / 2.0) / (1.0 - tau * lambda / 2.0);
    CHECK(y1[0] == doctest::Approx(trap).epsilon(1e-12));
  }
}

TEST_CASE("rosenbrock_s_stage_step") {
  const ode::NewtonSettings lin{1e-12, 50, 1e-14, 200};
  SUBCASE("f = 0 keeps both outputs") {
    auto f0 = [](std::span<const double> y, double) {
      return std::vector<double>(y.size(), 0.0);
    };
    auto [y1, y1e] = ode::rosenbrock_s_stage_step(f0, scalar_matrix(0.0), {},
                                                  std::vector<double>{2.0}, 0.0, 0.5,
                                                  ode::ros2_1(), lin);
    CHECK(y1[0] == 2.0);
    CHECK(y1e[0] == 2.0);
  }
  SUBCASE("ROS2(1) local error is O(tau^3) on y' = -y") {
    std::vector<double> taus{1e-1, 1e-2, 1e-3};
    std::vector<double> errs;
    for (double tau : taus) {
      auto [y1, y1e] = ode::rosenbrock_s_stage_step(
          dahlquist(-1.0), scalar_matrix(-1.0), {}, std::vector<double>{1.0}, 0.0, tau,
          ode::ros2_1(), lin);
      errs.push_back(std::fabs(y1[0] - std::exp(-tau)));
    }
    const double slope = fit_slope(taus, errs);
    CHECK(slope == doctest::Approx(3.0).epsilon(0.12));
  }
  SUBCASE("ROS3p global order 3 on y' = -y + sin t") {
    // exact solution with y(0) = 1: y = 1.5 e^{-t} + (sin t - cos t)/2
    auto f = [](std::span<const double> y, double t) {
      return std::vector<double>{-y[0] + std::sin(t)};
    };
    const double T = 2.0;
    std::vector<double> taus{T / 8, T / 16, T / 32, T / 64};
    std::vector<double> errs;
    for (double tau : taus) {
      std::vector<double> y{1.0};
      double t = 0.0;
      while (t < T - 1e-12) {
        const std::vector<double> dfdt{std::cos(t)};
        auto [y1, y1e] = ode::rosenbrock_s_stage_step(f, scalar_matrix(-1.0), dfdt, y, t,
                                                      tau, ode::ros3p(), lin);
        y = y1;
        t += tau;
      }
      const double exact = 1.5 * std::exp(-T) + 0.5 * (std::sin(T) - std::cos(T));
      errs.push_back(std::fabs(y[0] - exact));
    }
    const double slope = fit_slope(taus, errs);
    CHECK(slope > 2.8);
    CHECK(slope < 3.3);
  }
  SUBCASE("embedded solution differs at the expected order") {
    auto [y1, y1e] = ode::rosenbrock_s_stage_step(dahlquist(-1.0), scalar_matrix(-1.0), {},
                                                  std::vector<double>{1.0}, 0.0, 0.1,
                                                  ode::ros2_1(), lin);
    CHECK(y1[0] != y1e[0]);
    CHECK(std::fabs(y1[0] - y1e[0]) < 5e-2);
  }
}

TEST_CASE("stability_function") {
  using ode::SchemeId;
  using ode::SchemeKind;

  SUBCASE("consistency R(0) = 1 for every scheme") {
    for (SchemeKind kind : {SchemeKind::ThetaEuler, SchemeKind::Erem, SchemeKind::Rosm,
                            SchemeKind::Ros2_1, SchemeKind::Ros3p}) {
      SchemeId s;
      s.kind = kind;
      s.theta = 0.7;
      s.gamma = 0.9;
      CHECK(std::abs(ode::stability_function(s, {0.0, 0.0}) - 1.0) < 1e-14);
    }
  }
  SUBCASE("L-stability limits") {
    SchemeId th;
    th.kind = SchemeKind::ThetaEuler;
    th.theta = 1.0;
    CHECK(std::abs(ode::stability_function(th, {-1e6, 0.0})) < 1e-5);
    th.theta = 0.5;
    CHECK(std::abs(ode::stability_function(th, {-1e6, 0.0})) ==
          doctest::Approx(1.0).epsilon(1e-4));
    SchemeId rm;
    rm.kind = SchemeKind::Rosm;
    rm.gamma = 1.0;
    CHECK(std::abs(ode::stability_function(rm, {-1e6, 0.0})) < 1e-5);
    SchemeId r2;
    r2.kind = SchemeKind::Ros2_1;
    CHECK(std::abs(ode::stability_function(r2, {-1e9, 0.0})) < 1e-6);
    SchemeId r3;
    r3.kind = SchemeKind::Ros3p;
    CHECK(std::abs(ode::stability_function(r3, {-1e9, 0.0})) ==
          doctest::Approx(0.7320508075688772).epsilon(1e-6));
  }
  SUBCASE("A-stability sampling on the left half-plane") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> mag(-6.0, 6.0);
    std::uniform_real_distribution<double> angle(0.5 * M_PI, 1.5 * M_PI);
    for (double par : {0.5, 1.0}) {
      SchemeId th;
      th.kind = SchemeKind::ThetaEuler;
      th.theta = par;
      SchemeId rm;
      rm.kind = SchemeKind::Rosm;
      rm.gamma = par;
      for (int i = 0; i < 10000; ++i) {
        const double r = std::pow(10.0, mag(rng));
        const double a = angle(rng);
        const std::complex<double> z{r * std::cos(a), r * std::sin(a)};
        CHECK(std::abs(ode::stability_function(th, z)) <= 1.0 + 1e-12);
        CHECK(std::abs(ode::stability_function(rm, z)) <= 1.0 + 1e-12);
      }
    }
  }
  SUBCASE("pole raises a domain error") {
    SchemeId th;
    th.kind = SchemeKind::ThetaEuler;
    th.theta = 0.5;
    CHECK_THROWS_AS(ode::stability_function(th, {2.0, 0.0}), std::domain_error);
  }
}

TEST_CASE("adapt_step") {
  ode::StepController ctrl;
  ctrl.safety = 0.9;
  ctrl.min_factor = 0.2;
  ctrl.max_factor = 5.0;
  ctrl.tau = 2.0;

  SUBCASE("boundary acceptance at err = 1") {
    const ode::StepDecision d = ode::adapt_step(ctrl, 1.0, 2);
    CHECK(d.accept);
    CHECK(d.tau_next == doctest::Approx(0.9 * 2.0).epsilon(1e-14));
  }
  SUBCASE("zero error grows by the max factor") {
    const ode::StepDecision d = ode::adapt_step(ctrl, 0.0, 2);
    CHECK(d.accept);
    CHECK(d.tau_next == doctest::Approx(5.0 * 2.0).epsilon(1e-14));
  }
  SUBCASE("err = 16 at order 2 rejects with factor 0.225") {
    const ode::StepDecision d = ode::adapt_step(ctrl, 16.0, 2);
    CHECK(!d.accept);
    CHECK(d.tau_next == doctest::Approx(0.225 * 2.0).epsilon(1e-14));
  }
  SUBCASE("negative error is rejected as input") {
    CHECK_THROWS_AS(ode::adapt_step(ctrl, -1.0, 2), std::invalid_argument);
  }
}
