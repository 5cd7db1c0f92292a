#include "pbfock/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace pbfock {

namespace {

Eigen::VectorXd jacobi_nodes(const Eigen::VectorXd& offdiag) {
  const Eigen::Index n = offdiag.size() + 1;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

// Hermite functions h_0..h_nmax at x, log-magnitude scaled internally.
void hermite_column(int nmax, double x, double* out) {
  double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  double prev = 0.0, cur = 1.0;
  auto emit = [&](int n, double m) {
    out[n] = m == 0.0 ? 0.0 : std::copysign(std::exp(log_scale + std::log(std::abs(m))), m);
  };
  emit(0, cur);
  for (int n = 0; n < nmax; ++n) {
    const double next = x * std::sqrt(2.0 / (n + 1.0)) * cur - std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      prev *= 1e-150;
      cur *= 1e-150;
      log_scale += 150.0 * std::log(10.0);
    }
    emit(n + 1, cur);
  }
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  if (n == 1) {
    r.nodes(0) = 0.0;
    r.weights(0) = 2.0;
  } else {
    Eigen::VectorXd off(n - 1);
    for (int k = 1; k < n; ++k) off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::VectorXd x = jacobi_nodes(off);
    for (int i = 0; i < n; ++i) {
      double xi = x(i), p = 0.0, dp = 0.0;
      for (int it = 0; it < 3; ++it) {
        legendre(n, xi, p, dp);
        xi -= p / dp;
      }
      legendre(n, xi, p, dp);
      r.nodes(i) = xi;
      r.weights(i) = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  r.nodes = (r.nodes.array() * half + mid).matrix();
  r.weights *= half;
  return r;
}

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  if (n == 1) {
    r.nodes(0) = 0.0;
    r.weights(0) = std::sqrt(std::numbers::pi);
    return r;
  }
  Eigen::VectorXd off(n - 1);
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(0.5 * k);
  Eigen::VectorXd x = jacobi_nodes(off);
  std::vector<double> h(n + 1);
  for (int i = 0; i < n; ++i) {
    double xi = x(i);
    for (int it = 0; it < 3; ++it) {
      hermite_column(n, xi, h.data());
      const double dh = std::sqrt(2.0 * n) * h[n - 1] - xi * h[n];
      if (dh == 0.0) break;
      xi -= h[n] / dh;
    }
    hermite_column(n, xi, h.data());
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += h[k] * h[k];
    r.nodes(i) = xi;
    r.weights(i) = 1.0 / s;
  }
  return r;
}

Eigen::MatrixXd hermite_functions(int nmax, const Eigen::VectorXd& xs) {
  if (nmax < 0) throw std::invalid_argument("hermite_functions: nmax must be >= 0");
  Eigen::MatrixXd out(nmax + 1, xs.size());
  for (Eigen::Index j = 0; j < xs.size(); ++j) hermite_column(nmax, xs(j), out.col(j).data());
  return out;
}

}  // namespace pbfock
