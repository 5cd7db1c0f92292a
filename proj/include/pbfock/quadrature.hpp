#pragma once

#include <Eigen/Dense>

namespace pbfock {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// n-point Gauss-Hermite rule for weight exp(-x^2). The returned weights are the scaled
// weights w_i exp(x_i^2), which integrate f against dx when f decays like a Hermite function.
QuadratureRule gauss_hermite(int n);

// Row n, column j holds h_n(xs_j), the orthonormal Hermite function, for n = 0..nmax.
Eigen::MatrixXd hermite_functions(int nmax, const Eigen::VectorXd& xs);

}  // namespace pbfock
