#pragma once

#include <span>
#include <vector>

#include "georos/linalg/dense.hpp"

namespace georos::linalg {

/// Matrix exponential e^A by degree-13 diagonal Pade approximation with
/// scaling and squaring (||A/2^s||_1 kept below 5.4). A Taylor-series
/// backend would be a drop-in alternative here; only Pade is provided.
DenseMatrix dense_expm(const DenseMatrix& A);

/// phi_i(A) for i >= 1, where phi_i(z) = int_0^1 e^{(1-s)z} s^{i-1}/(i-1)! ds,
/// computed through the exponential of a block-augmented companion matrix so
/// that singular A needs no special casing.
DenseMatrix dense_phi(int order, const DenseMatrix& A);

/// phi_i(A)*b without forming phi_i(A): exponential of an (n+i)-dimensional
/// augmentation of A. Preferred for first-column extractions.
std::vector<double> dense_phi_action(int order, const DenseMatrix& A,
                                     std::span<const double> b);

/// Scalar phi_i(z); switches to the Taylor series for |z| < 0.5 because the
/// downward recurrence divides by z.
double phi_scalar(int order, double z);

}  // namespace georos::linalg
