#include "georos/phi/substep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "georos/linalg/vector_ops.hpp"

namespace georos::phi::detail {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// p(t) = t^q / q! and its derivatives, q = order-1.
double monomial_coeff(int order, int deriv, double t) {
  const int q = order - 1 - deriv;
  if (q < 0) return 0.0;
  return std::pow(t, q) / factorial(q);
}

}  // namespace

PhiResult integrate_phi(const SingleShot& shot, const MatrixAction& apply_J, double tau,
                        std::span<const double> v, int order, double tol_abs,
                        std::size_t max_substeps, const char* backend_name) {
  const std::size_t n = v.size();
  PhiResult out;
  out.value.assign(n, 0.0);
  out.substeps = 0;

  const double vnorm = linalg::norm2(v);
  if (vnorm == 0.0 || tau == 0.0) {
    if (order >= 1 && tau == 0.0 && vnorm > 0.0) {
      // phi_i(0) = I / i!
      out.value.assign(v.begin(), v.end());
      linalg::scale(1.0 / factorial(order), out.value);
    }
    out.substeps = 1;
    return out;
  }

  // y' = J y + t^{order-1}/(order-1)! v integrated over [0, tau];
  // phi_order(tau J) v = y(tau) / tau^order.
  std::vector<double> y(n, 0.0);
  std::vector<double> w1(n), jy(n);
  bool y_nonzero = false;
  double t = 0.0;
  double delta = tau;
  const double y_target = tol_abs * std::pow(tau, order);
  std::size_t attempts = 0;
  double best_err = 0.0;

  while (t < tau) {
    delta = std::min(delta, tau - t);
    if (++attempts > max_substeps) {
      throw PhiNonConvergence(std::string(backend_name) +
                                  ": substep cap exceeded, best error estimate " +
                                  std::to_string(best_err),
                              best_err);
    }
    const double budget = y_target * (delta / tau);

    // active pieces for this substep
    const double c1 = monomial_coeff(order, 0, t);
    int npieces = 0;
    if (y_nonzero || c1 != 0.0) ++npieces;
    for (int j = 2; j <= order; ++j)
      if (monomial_coeff(order, j - 1, t) != 0.0) ++npieces;
    if (npieces == 0) {  // nothing to integrate on this substep
      t += delta;
      ++out.substeps;
      continue;
    }
    const double allowance = budget / npieces;

    bool ok = true;
    double shot_err = 0.0;
    std::vector<std::pair<double, std::vector<double>>> contribs;

    if (y_nonzero || c1 != 0.0) {
      if (y_nonzero) {
        apply_J(y, jy);
        ++out.matvec_count;
      } else {
        std::fill(jy.begin(), jy.end(), 0.0);
      }
      for (std::size_t i = 0; i < n; ++i) w1[i] = jy[i] + c1 * v[i];
      if (linalg::norm2(w1) > 0.0) {
        auto s1 = shot(delta, w1, 1, allowance / delta);
        out.matvec_count += s1.matvecs;
        ok = ok && s1.ok;
        shot_err = std::max(shot_err, s1.err);
        contribs.emplace_back(delta, std::move(s1.value));
      }
    }
    for (int j = 2; j <= order && ok; ++j) {
      const double cj = monomial_coeff(order, j - 1, t);
      if (cj == 0.0) continue;
      const double w = std::pow(delta, j) * cj;
      auto sj = shot(delta, v, j, allowance / std::abs(w));
      out.matvec_count += sj.matvecs;
      ok = ok && sj.ok;
      shot_err = std::max(shot_err, sj.err);
      contribs.emplace_back(w, std::move(sj.value));
    }

    if (!ok) {
      best_err = std::max(best_err, shot_err);
      delta *= 0.5;
      continue;
    }
    for (auto& [wgt, val] : contribs) linalg::axpy(wgt, val, y);
    y_nonzero = true;
    t += delta;
    ++out.substeps;
    out.err_estimate = std::max(out.err_estimate, shot_err);
  }

  out.value = std::move(y);
  linalg::scale(1.0 / std::pow(tau, order), out.value);
  return out;
}

}  // namespace georos::phi::detail
