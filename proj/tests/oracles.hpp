#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "pbfock/types.hpp"

namespace oracle {

using pbfock::Complex;
using pbfock::Index;
using pbfock::MatrixXc;
using pbfock::VectorXc;

// Kernel of the first D rows of a (D+1)x(D+1) lowering matrix, unit norm.
inline VectorXc null_vector(const MatrixXc& lowering) {
  const Index n = lowering.rows();
  const MatrixXc top = lowering.topRows(n - 1);
  Eigen::BDCSVD<MatrixXc> svd(top, Eigen::ComputeFullV);
  return svd.matrixV().col(n - 1).normalized();
}

// min over phases of || a e^{i t} - b ||.
inline double phase_distance(const VectorXc& a, const VectorXc& b) {
  const Complex ov = a.dot(b);
  const Complex ph = std::abs(ov) > 0 ? ov / std::abs(ov) : Complex(1.0);
  return (a * ph - b).norm();
}

// Regularized lower incomplete gamma P(n+1, x) = 1 - exp(-x) sum_{k<=n} x^k/k!.
inline double lower_gamma_p(int n, double x) {
  double term = std::exp(-x), sum = term;
  for (int k = 1; k <= n; ++k) {
    term *= x / k;
    sum += term;
  }
  return 1.0 - sum;
}

// Physicists' Hermite polynomial by explicit recurrence in long double.
inline long double hermite_poly(int n, long double x) {
  long double h0 = 1.0L, h1 = 2.0L * x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const long double h2 = 2.0L * x * h1 - 2.0L * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

inline double hermite_function(int n, double x) {
  const long double norm = std::sqrt(std::pow(2.0L, n) * std::tgamma(n + 1.0L) * std::sqrt(3.14159265358979323846L));
  return static_cast<double>(hermite_poly(n, x) * std::exp(-0.5L * x * x) / norm);
}

}  // namespace oracle
