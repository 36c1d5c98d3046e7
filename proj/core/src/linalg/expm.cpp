#include "georos/linalg/expm.hpp"

#include <cmath>
#include <stdexcept>

namespace georos::linalg {

namespace {

// Degree-13 diagonal Pade coefficients.
constexpr double kPade13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                              1187353796428800.0,  129060195264000.0,   10559470521600.0,
                              670442572800.0,      33522128640.0,       1323241920.0,
                              40840800.0,          960960.0,            16380.0,
                              182.0,               1.0};
// ||A||_1 bound under which the (13,13) approximant is accurate to unit roundoff.
constexpr double kTheta13 = 5.371920351148152;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

DenseMatrix dense_expm(const DenseMatrix& A) {
  if (!A.all_finite()) throw std::invalid_argument("dense_expm: non-finite entries");
  const std::size_t n = A.size();
  if (n == 0) return DenseMatrix(0);

  const double nrm = A.one_norm();
  int squarings = 0;
  if (nrm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));

  DenseMatrix As = A;
  if (squarings > 0) As *= std::ldexp(1.0, -squarings);

  const DenseMatrix I = DenseMatrix::identity(n);
  const DenseMatrix A2 = matmul(As, As);
  const DenseMatrix A4 = matmul(A2, A2);
  const DenseMatrix A6 = matmul(A2, A4);

  // U = A*(A6*(b13*A6 + b11*A4 + b9*A2) + b7*A6 + b5*A4 + b3*A2 + b1*I)
  DenseMatrix W1(n), W2(n);
  auto add_scaled = [&](DenseMatrix& acc, const DenseMatrix& M, double c) {
    for (std::size_t k = 0; k < n * n; ++k) acc.data()[k] += c * M.data()[k];
  };
  add_scaled(W1, A6, kPade13[13]);
  add_scaled(W1, A4, kPade13[11]);
  add_scaled(W1, A2, kPade13[9]);
  DenseMatrix U = matmul(A6, W1);
  add_scaled(U, A6, kPade13[7]);
  add_scaled(U, A4, kPade13[5]);
  add_scaled(U, A2, kPade13[3]);
  add_scaled(U, I, kPade13[1]);
  U = matmul(As, U);

  // V = A6*(b12*A6 + b10*A4 + b8*A2) + b6*A6 + b4*A4 + b2*A2 + b0*I
  add_scaled(W2, A6, kPade13[12]);
  add_scaled(W2, A4, kPade13[10]);
  add_scaled(W2, A2, kPade13[8]);
  DenseMatrix V = matmul(A6, W2);
  add_scaled(V, A6, kPade13[6]);
  add_scaled(V, A4, kPade13[4]);
  add_scaled(V, A2, kPade13[2]);
  add_scaled(V, I, kPade13[0]);

  // solve (V - U) X = (V + U)
  DenseMatrix num(n), den(n);
  for (std::size_t k = 0; k < n * n; ++k) {
    num.data()[k] = V.data()[k] + U.data()[k];
    den.data()[k] = V.data()[k] - U.data()[k];
  }
  lu_solve_in_place(std::move(den), num);

  for (int s = 0; s < squarings; ++s) num = matmul(num, num);
  return num;
}

DenseMatrix dense_phi(int order, const DenseMatrix& A) {
  if (order < 1) throw std::invalid_argument("dense_phi: order must be >= 1");
  if (!A.all_finite()) throw std::invalid_argument("dense_phi: non-finite entries");
  const std::size_t n = A.size();
  const std::size_t p = static_cast<std::size_t>(order);

  // exp of the block companion [[A I 0..];[0 0 I..];..;[0..0]] holds
  // phi_j(A) in the (0, j) block; read off the (0, order) block.
  const std::size_t N = n * (p + 1);
  DenseMatrix aug(N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
  for (std::size_t blk = 0; blk < p; ++blk)
    for (std::size_t i = 0; i < n; ++i) aug(blk * n + i, (blk + 1) * n + i) = 1.0;

  const DenseMatrix E = dense_expm(aug);
  DenseMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = E(i, p * n + j);
  return out;
}

std::vector<double> dense_phi_action(int order, const DenseMatrix& A,
                                     std::span<const double> b) {
  if (order < 1) throw std::invalid_argument("dense_phi_action: order must be >= 1");
  const std::size_t n = A.size();
  if (b.size() != n) throw std::invalid_argument("dense_phi_action: dimension mismatch");
  const std::size_t p = static_cast<std::size_t>(order);

  // y' = A y + c_1(t) b with a length-p integrator chain c: the top block of
  // e^{aug} applied to [0; e_p] equals phi_order(A) b.
  const std::size_t N = n + p;
  DenseMatrix aug(N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
  for (std::size_t i = 0; i < n; ++i) aug(i, n) = b[i];
  for (std::size_t k = 0; k + 1 < p; ++k) aug(n + k, n + k + 1) = 1.0;

  const DenseMatrix E = dense_expm(aug);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = E(i, N - 1);
  return out;
}

double phi_scalar(int order, double z) {
  if (order < 0) throw std::invalid_argument("phi_scalar: order must be >= 0");
  if (order == 0) return std::exp(z);
  if (std::abs(z) < 0.5) {
    // phi_i(z) = sum_{k>=0} z^k / (k+i)!
    double term = 1.0 / factorial(order);
    double sum = term;
    for (int k = 1; k < 40; ++k) {
      term *= z / static_cast<double>(k + order);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  double phi = std::exp(z);
  for (int i = 1; i <= order; ++i) phi = (phi - 1.0 / factorial(i - 1)) / z;
  return phi;
}

}  // namespace georos::linalg
