#include <cmath>

#include <doctest.h>

#include "georos/props/water.hpp"

using namespace georos::props;

TEST_CASE("water_density") {
  SUBCASE("formula zero at the vertex") { CHECK(water_density(3.9863) == 1000.0); }
  SUBCASE("regression pins from direct evaluation") {
    CHECK(water_density(60.0) == doctest::Approx(983.21064237956).epsilon(1e-12));
    CHECK(water_density(20.0) == doctest::Approx(998.233636139882).epsilon(1e-12));
    CHECK(water_density(100.0) == doctest::Approx(958.09662933253).epsilon(1e-12));
  }
  SUBCASE("monotone decrease above 4 C") {
    CHECK(water_density(100.0) < water_density(60.0));
    CHECK(water_density(60.0) < water_density(20.0));
  }
}

TEST_CASE("water_viscosity") {
  SUBCASE("first branch at T = 0: exponent vanishes") {
    CHECK(water_viscosity(0.0) == doctest::Approx(1.787e-3).epsilon(1e-15));
  }
  SUBCASE("first branch at T = 20") {
    CHECK(water_viscosity(20.0) ==
          doctest::Approx(1.787e-3 * std::exp((-0.03288 + 1.962e-4 * 20.0) * 20.0))
              .epsilon(1e-15));
    CHECK(water_viscosity(20.0) == doctest::Approx(0.00100141924234983).epsilon(1e-12));
  }
  SUBCASE("documented discontinuity at the 40 C breakpoint stays below 5%") {
    const double left = water_viscosity(40.0);  // first branch (<= 40)
    const double right = 1e-3 * std::pow(1.0 + 0.015512 * (40.0 - 20.0), -1.572);
    CHECK(left == doctest::Approx(0.000656559626967645).epsilon(1e-12));
    CHECK(right == doctest::Approx(0.000653919755333064).epsilon(1e-12));
    CHECK(std::fabs(left - right) / left < 0.05);
  }
  SUBCASE("second and third branches") {
    CHECK(water_viscosity(60.0) == doctest::Approx(0.000468209414906537).epsilon(1e-12));
    CHECK(water_viscosity(150.0) == doctest::Approx(0.000181088877828913).epsilon(1e-12));
  }
  SUBCASE("domain error outside [0, 300]") {
    CHECK_THROWS_AS(water_viscosity(-0.1), std::domain_error);
    CHECK_THROWS_AS(water_viscosity(300.5), std::domain_error);
  }
  SUBCASE("positive and decreasing on (0, 100) at 0.5 C spacing") {
    double prev = water_viscosity(0.5);
    for (double T = 1.0; T < 100.0; T += 0.5) {
      const double mu = water_viscosity(T);
      CHECK(mu > 0.0);
      if (std::fabs(T - 40.0) > 0.75)  // skip across the printed jump
        CHECK(mu < prev);
      prev = mu;
    }
  }
}

TEST_CASE("water_heat_capacity") {
  SUBCASE("constant coefficient at T -> 0") {
    CHECK(water_heat_capacity(1e-12) == doctest::Approx(4206.3640128).epsilon(1e-12));
  }
  SUBCASE("direct cubic evaluation at T = 50") {
    CHECK(water_heat_capacity(50.0) == doctest::Approx(4175.54453655).epsilon(1e-12));
  }
  SUBCASE("coefficient echo") {
    // difference of the cubic against the same polynomial written out here
    for (double T : {10.0, 35.0, 77.0}) {
      const double ref =
          -1.3320081e-4 * T * T * T + 0.0328405 * T * T - 1.9254125 * T + 4206.3640128;
      CHECK(water_heat_capacity(T) == ref);
    }
  }
}

TEST_CASE("water_expansivity") {
  SUBCASE("zero at the density extremum") {
    CHECK(std::fabs(water_expansivity(3.9863)) < 1e-15);
  }
  SUBCASE("matches central finite differences at T = 60") {
    const double h = 1e-4;
    const double fd = -(water_density(60.0 + h) - water_density(60.0 - h)) /
                      (2.0 * h * water_density(60.0));
    CHECK(water_expansivity(60.0) == doctest::Approx(fd).epsilon(1e-8));
  }
  SUBCASE("grows with temperature in this range") {
    CHECK(water_expansivity(80.0) > water_expansivity(20.0));
  }
  SUBCASE("finite-difference sweep over (0, 100) at 1 C spacing") {
    const double h = 1e-4;
    for (double T = 1.0; T < 100.0; T += 1.0) {
      const double fd =
          -(water_density(T + h) - water_density(T - h)) / (2.0 * h * water_density(T));
      CHECK(water_expansivity(T) == doctest::Approx(fd).epsilon(1e-8));
    }
  }
}

TEST_CASE("porosity law") {
  CHECK(porosity(0.25, 5e6, 5e6, 1e-7) == 0.25);
  CHECK(porosity(0.25, 9e6, 5e6, 0.0) == 0.25);
  CHECK(porosity(0.2, 1e6 + 5e6, 5e6, 1e-7) == doctest::Approx(0.22).epsilon(1e-14));
  CHECK_THROWS_AS(porosity(0.5, 2e7, 0.0, 1e-6), std::domain_error);   // phi >= 1
  CHECK_THROWS_AS(porosity(0.5, -2e7, 0.0, 1e-6), std::domain_error);  // phi <= 0
  CHECK_THROWS_AS(porosity(1.5, 0.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("FluidModel clamping and overrides") {
  FluidModel fm;
  CHECK(fm.clamp_warnings() == 0);
  (void)fm.density(-5.0);  // below the correlation domain
  CHECK(fm.clamp_warnings() == 1);
  CHECK(fm.density(-5.0) == water_density(0.0));
  (void)fm.heat_capacity(150.0);
  CHECK(fm.clamp_warnings() == 3);
  fm.reset_warnings();
  CHECK(fm.clamp_warnings() == 0);

  FluidModel constant;
  constant.constant_density = 1000.0;
  constant.constant_heat_capacity = 4200.0;
  CHECK(constant.density(73.0) == 1000.0);
  CHECK(constant.heat_capacity(73.0) == 4200.0);
  CHECK(constant.expansivity(73.0) == 0.0);
}

TEST_CASE("determinism of correlations") {
  for (double T : {0.5, 25.0, 60.0, 99.5}) {
    CHECK(water_density(T) == water_density(T));
    CHECK(water_viscosity(T) == water_viscosity(T));
    CHECK(water_heat_capacity(T) == water_heat_capacity(T));
  }
}
