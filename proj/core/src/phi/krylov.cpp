#include "georos/phi/krylov.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "georos/linalg/expm.hpp"
#include "georos/linalg/vector_ops.hpp"
#include "georos/phi/substep.hpp"

namespace georos::phi {

ArnoldiDecomposition arnoldi(const MatrixAction& apply_J, std::span<const double> v,
                             std::size_t m) {
  const std::size_t n = v.size();
  const double vnorm = linalg::norm2(v);
  if (vnorm == 0.0) throw std::invalid_argument("arnoldi: zero input vector");
  if (m < 1) throw std::invalid_argument("arnoldi: m must be >= 1");

  const double breakdown_tol = 1e-14 * vnorm;

  ArnoldiDecomposition dec;
  dec.hbar = linalg::DenseMatrix(m + 1);
  dec.basis.reserve(m + 1);
  dec.basis.emplace_back(v.begin(), v.end());
  linalg::scale(1.0 / vnorm, dec.basis[0]);

  std::vector<double> w(n);
  for (std::size_t j = 0; j < m; ++j) {
    apply_J(dec.basis[j], w);
    // modified Gram-Schmidt
    for (std::size_t i = 0; i <= j; ++i) {
      const double h = linalg::dot(w, dec.basis[i]);
      dec.hbar(i, j) += h;
      linalg::axpy(-h, dec.basis[i], w);
    }
    // one classical refinement pass when orthogonality has drifted
    double wn = linalg::norm2(w);
    double drift = 0.0;
    for (std::size_t i = 0; i <= j; ++i)
      drift = std::max(drift, std::abs(linalg::dot(w, dec.basis[i])));
    if (wn > 0.0 && drift / wn > 1e-8) {
      for (std::size_t i = 0; i <= j; ++i) {
        const double h = linalg::dot(w, dec.basis[i]);
        dec.hbar(i, j) += h;
        linalg::axpy(-h, dec.basis[i], w);
      }
      wn = linalg::norm2(w);
    }

    if (wn < breakdown_tol) {
      dec.m = j + 1;
      dec.h_next = 0.0;
      dec.happy_breakdown = true;
      // shrink hbar to (m_used+1)^2 layout with zero border
      linalg::DenseMatrix h(dec.m + 1);
      for (std::size_t r = 0; r < dec.m; ++r)
        for (std::size_t c = 0; c < dec.m; ++c) h(r, c) = dec.hbar(r, c);
      dec.hbar = std::move(h);
      return dec;
    }
    dec.hbar(j + 1, j) = wn;
    dec.basis.emplace_back(w);
    linalg::scale(1.0 / wn, dec.basis.back());
  }
  dec.m = m;
  dec.h_next = dec.hbar(m, m - 1);
  // bordered form: last column must stay zero
  for (std::size_t r = 0; r <= m; ++r) dec.hbar(r, m) = 0.0;
  return dec;
}

namespace {

// Single projected evaluation of phi_order(delta*J)*w with error estimate.
detail::ShotOutcome krylov_shot(const MatrixAction& apply_J, double delta,
                                std::span<const double> w, int order, double budget,
                                std::size_t m) {
  detail::ShotOutcome out;
  const double wnorm = linalg::norm2(w);
  if (wnorm == 0.0) {
    out.value.assign(w.size(), 0.0);
    return out;
  }

  ArnoldiDecomposition dec = arnoldi(apply_J, w, m);
  out.matvecs = dec.m;

  const std::size_t k = dec.happy_breakdown ? dec.m : dec.m + 1;
  linalg::DenseMatrix small(k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) small(r, c) = delta * dec.hbar(r, c);

  std::vector<double> e1(k, 0.0);
  e1[0] = 1.0;
  std::vector<double> u = linalg::dense_phi_action(order, small, e1);

  out.value.assign(w.size(), 0.0);
  const std::size_t ncols = std::min(k, dec.basis.size());
  for (std::size_t c = 0; c < ncols; ++c)
    linalg::axpy(wnorm * u[c], dec.basis[c], out.value);

  if (dec.happy_breakdown) {
    out.err = 0.0;  // invariant subspace: projection is exact
    out.ok = true;
  } else {
    const double abs_err = wnorm * std::abs(u[k - 1]);
    out.err = std::abs(u[k - 1]);  // relative to ||w||
    out.ok = abs_err <= budget;
  }
  return out;
}

}  // namespace

PhiResult phi_krylov(const MatrixAction& apply_J, double tau, std::span<const double> v,
                     int order, const KrylovOptions& opt) {
  if (order < 1) throw std::invalid_argument("phi_krylov: order must be >= 1");
  if (tau <= 0.0) throw std::invalid_argument("phi_krylov: tau must be positive");
  if (opt.m < 1) throw std::invalid_argument("phi_krylov: m must be >= 1");

  const double tol_abs = opt.tol * linalg::norm2(v);
  auto shot = [&](double delta, std::span<const double> w, int ord, double budget) {
    return krylov_shot(apply_J, delta, w, ord, budget, opt.m);
  };
  return detail::integrate_phi(shot, apply_J, tau, v, order, tol_abs, opt.max_substeps,
                               "phi_krylov");
}

PhiResult phi_krylov(const MatrixAction& apply_J, double tau, std::span<const double> v,
                     int order, std::size_t m, double tol) {
  KrylovOptions opt;
  opt.m = m;
  opt.tol = tol;
  return phi_krylov(apply_J, tau, v, order, opt);
}

std::vector<double> jacobian_free_action(const RhsCallback& f, std::span<const double> y_n,
                                         double t_n, std::span<const double> v, double eps,
                                         bool central) {
  const std::size_t n = y_n.size();
  const double vnorm = linalg::norm2(v);
  if (vnorm == 0.0) return std::vector<double>(n, 0.0);
  if (eps < 0.0) throw std::invalid_argument("jacobian_free_action: eps must be >= 0");
  if (eps == 0.0) {
    eps = std::sqrt(std::numeric_limits<double>::epsilon()) *
          (1.0 + linalg::norm_inf(y_n)) / vnorm;
  }

  std::vector<double> yp(y_n.begin(), y_n.end());
  linalg::axpy(eps, v, yp);
  std::vector<double> fp = f(yp, t_n);
  if (central) {
    std::vector<double> ym(y_n.begin(), y_n.end());
    linalg::axpy(-eps, v, ym);
    std::vector<double> fm = f(ym, t_n);
    for (std::size_t i = 0; i < n; ++i) fp[i] = (fp[i] - fm[i]) / (2.0 * eps);
    return fp;
  }
  std::vector<double> f0 = f(y_n, t_n);
  for (std::size_t i = 0; i < n; ++i) fp[i] = (fp[i] - f0[i]) / eps;
  return fp;
}

}  // namespace georos::phi
