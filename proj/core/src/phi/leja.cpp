#include "georos/phi/leja.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "georos/linalg/dense.hpp"
#include "georos/linalg/expm.hpp"
#include "georos/linalg/vector_ops.hpp"
#include "georos/phi/substep.hpp"

namespace georos::phi {

namespace {

struct LejaCache {
  std::vector<double> points;
  // candidate midpoints and their distance products, kept in lockstep
  std::vector<double> cand;
  std::vector<double> cand_prod;
  std::mutex mu;

  void extend(std::size_t upto) {
    std::scoped_lock lock(mu);
    if (points.empty()) {
      points = {2.0, -2.0};
      cand = {0.0};
      cand_prod = {4.0};  // |0-2|*|0+2|
    }
    while (points.size() < upto + 1) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < cand.size(); ++k)
        if (cand_prod[k] > cand_prod[best]) best = k;
      const double xi = cand[best];

      // locate neighbours of the accepted candidate among accepted points
      double left = -2.0, right = 2.0;
      for (double p : points) {
        if (p < xi && p > left) left = p;
        if (p > xi && p < right) right = p;
      }
      cand.erase(cand.begin() + best);
      cand_prod.erase(cand_prod.begin() + best);

      points.push_back(xi);
      // existing candidate products pick up the new point
      for (std::size_t k = 0; k < cand.size(); ++k) cand_prod[k] *= std::abs(cand[k] - xi);
      // the accepted candidate's interval splits into two new midpoints
      for (double c : {0.5 * (left + xi), 0.5 * (xi + right)}) {
        double prod = 1.0;
        for (double p : points) prod *= std::abs(c - p);
        cand.push_back(c);
        cand_prod.push_back(prod);
      }
    }
  }

  std::vector<double> first(std::size_t count) {
    extend(count - 1);
    std::scoped_lock lock(mu);
    return {points.begin(), points.begin() + count};
  }
};

LejaCache& cache() {
  static LejaCache c;
  return c;
}

}  // namespace

LejaSequence fast_leja_points(std::size_t M) {
  return LejaSequence{cache().first(M + 1)};
}

DividedDifferences divided_differences(int order, double tau, double alpha, double beta,
                                       const LejaSequence& xi, std::size_t degree) {
  if (order < 1) throw std::invalid_argument("divided_differences: order must be >= 1");
  if (beta < alpha) throw std::invalid_argument("divided_differences: beta < alpha");
  if (xi.points.size() < degree + 1)
    throw std::invalid_argument("divided_differences: not enough Leja points");

  DividedDifferences dd;
  dd.alpha = alpha;
  dd.beta = beta;
  dd.tau = tau;
  dd.phi_order = order;

  const double c = 0.5 * (alpha + beta);
  const double g = 0.25 * (beta - alpha);

  if (beta - alpha < 1e-300) {  // point spectrum: constant interpolation
    dd.d.assign(degree + 1, 0.0);
    dd.d[0] = linalg::phi_scalar(order, tau * c);
    return dd;
  }

  linalg::DenseMatrix L(degree + 1);
  for (std::size_t i = 0; i <= degree; ++i) {
    L(i, i) = tau * (c + g * xi.points[i]);
    if (i > 0) L(i, i - 1) = tau * g;
  }
  std::vector<double> e1(degree + 1, 0.0);
  e1[0] = 1.0;
  dd.d = linalg::dense_phi_action(order, L, e1);
  return dd;
}

namespace {

// Newton-form interpolation shot: P_m = P_{m-1} + d_m q_m with
// q_m = ((J - cJ I)/gJ - xi_{m-1} I) q_{m-1}. The interval constants cJ, gJ
// are those of J itself; delta enters only through the divided differences.
struct LejaWorkspace {
  double c_j = 0.0, g_j = 0.0;  // affine map of J's spectral interval to [-2,2]
  std::vector<double> xi;
  std::map<std::pair<double, int>, std::vector<double>> dd_cache;  // (delta, order) -> d
};

detail::ShotOutcome leja_shot(const MatrixAction& apply_J, LejaWorkspace& ws, double delta,
                              std::span<const double> w, int order, const LejaControl& ctrl,
                              double scal) {
  detail::ShotOutcome out;
  const std::size_t n = w.size();

  auto key = std::make_pair(delta, order);
  auto it = ws.dd_cache.find(key);
  if (it == ws.dd_cache.end()) {
    LejaSequence seq{ws.xi};
    DividedDifferences dd = divided_differences(
        order, delta, ws.c_j - 2.0 * ws.g_j, ws.c_j + 2.0 * ws.g_j, seq, ctrl.max_degree);
    it = ws.dd_cache.emplace(key, std::move(dd.d)).first;
  }
  const std::vector<double>& d = it->second;

  out.value.assign(w.begin(), w.end());
  linalg::scale(d[0], out.value);

  if (ws.g_j == 0.0) {  // point spectrum: P = d0 * w is exact
    out.ok = true;
    return out;
  }

  std::vector<double> q(w.begin(), w.end());
  std::vector<double> jq(n);
  std::vector<double> window;
  const double inv_g = 1.0 / ws.g_j;

  for (std::size_t m = 1; m <= ctrl.max_degree; ++m) {
    apply_J(q, jq);
    ++out.matvecs;
    const double shift = ws.c_j * inv_g + ws.xi[m - 1];
    for (std::size_t i = 0; i < n; ++i) q[i] = jq[i] * inv_g - shift * q[i];

    // e_m = d_m q_m in the weighted scaled norm
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = d[m] * q[i] / scal;
      acc += e * e;
    }
    const double err = std::sqrt(acc / static_cast<double>(n));
    linalg::axpy(d[m], q, out.value);

    window.push_back(err);
    if (window.size() > 5) window.erase(window.begin());
    double mean = 0.0;
    for (double e : window) mean += e;
    mean /= static_cast<double>(window.size());
    out.err = mean;
    if (std::pow(10.0, ctrl.p) * mean < 1.0) {
      out.ok = true;
      return out;
    }
  }
  out.ok = false;
  return out;
}

}  // namespace

PhiResult phi_leja(const MatrixAction& apply_J, double tau, std::span<const double> v,
                   int order, std::pair<double, double> interval, const LejaControl& ctrl,
                   double y_inf_norm) {
  if (order < 1) throw std::invalid_argument("phi_leja: order must be >= 1");
  if (tau <= 0.0) throw std::invalid_argument("phi_leja: tau must be positive");
  if (interval.second < interval.first)
    throw std::invalid_argument("phi_leja: empty spectral interval");
  if (ctrl.tol_a <= 0.0 || ctrl.tol_r <= 0.0)
    throw std::invalid_argument("phi_leja: tolerances must be positive");

  // inflate by 1% per side, then reduce to J's own interval (the supplied
  // one bounds the spectrum of tau*J)
  const double width = interval.second - interval.first;
  const double a = (interval.first - 0.01 * width) / tau;
  const double b = (interval.second + 0.01 * width) / tau;

  LejaWorkspace ws;
  ws.c_j = 0.5 * (a + b);
  ws.g_j = 0.25 * (b - a);
  ws.xi = fast_leja_points(ctrl.max_degree).points;

  const double scal = ctrl.tol_a + ctrl.tol_r * y_inf_norm;

  auto shot = [&](double delta, std::span<const double> w, int ord, double /*budget*/) {
    return leja_shot(apply_J, ws, delta, w, ord, ctrl, scal);
  };
  // the absolute budget is unused by the Leja acceptance rule; pass the
  // weighted-norm target scale for bookkeeping only
  return detail::integrate_phi(shot, apply_J, tau, v, order, ctrl.tol_a,
                               ctrl.max_substeps, "phi_leja");
}

}  // namespace georos::phi
