#include "georos/ode/tableau.hpp"

#include <stdexcept>

namespace georos::ode {

void RosenbrockTableau::validate() const {
  auto square = [&](const std::vector<std::vector<double>>& m) {
    if (m.size() != s) return false;
    for (const auto& row : m)
      if (row.size() != s) return false;
    return true;
  };
  if (s == 0 || gamma <= 0.0)
    throw std::invalid_argument("RosenbrockTableau: need s >= 1 and gamma > 0");
  if (!square(a) || !square(c))
    throw std::invalid_argument("RosenbrockTableau: a/c shape mismatch");
  if (alpha.size() != s || gamma_i.size() != s || b.size() != s || b_hat.size() != s)
    throw std::invalid_argument("RosenbrockTableau: vector length mismatch");
}

RosenbrockTableau ros2_1() {
  RosenbrockTableau t;
  t.s = 2;
  t.order = 2;
  t.gamma = 1.707106781186547e+00;
  t.a = {{0.0, 0.0},
         {5.857864376269050e-01, 0.0}};
  t.c = {{5.857864376269050e-01, 0.0},
         {1.171572875253810e+00, 5.857864376269050e-01}};
  t.gamma_i = {1.707106781186547e+00, -1.707106781186547e+00};
  t.alpha = {0.0, 1.0};
  t.b = {8.786796564403575e-01, 2.928932188134525e-01};
  t.b_hat = {5.857864376269050e-01, 0.0};
  t.validate();
  return t;
}

RosenbrockTableau ros3p() {
  RosenbrockTableau t;
  t.s = 3;
  t.order = 3;
  t.gamma = 7.886751345948129e-01;
  t.a = {{0.0, 0.0, 0.0},
         {1.267949192431123e+00, 0.0, 0.0},
         {1.267949192431123e+00, 0.0, 0.0}};
  t.c = {{1.267949192431123e+00, 0.0, 0.0},
         {1.607695154586736e+00, 1.267949192431123e+00, 0.0},
         {3.464101615137755e+00, 1.732050807568877e+00, 1.267949192431123e+00}};
  t.gamma_i = {7.886751345948129e-01, -2.113248654051871e-01, -1.077350269189626e+00};
  t.alpha = {0.0, 1.0, 1.0};
  t.b = {2.0, 5.773502691896258e-01, 4.226497308103742e-01};
  t.b_hat = {2.113248654051871e+00, 1.0, 4.226497308103742e-01};
  t.validate();
  return t;
}

}  // namespace georos::ode
