#pragma once

#include <cmath>
#include <string>

#include "pbfock/linalg.hpp"
#include "pbfock/types.hpp"

namespace pbfock {

enum class Family { harmonic, example3, example3b, example4, custom };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

// a = alpha c + beta c^dagger, b = gamma c + delta c^dagger.
struct DeformationParams {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 1.0;
  Family family = Family::harmonic;
  double s = 0.0;
  double mu = 0.0;

  static DeformationParams harmonic();
  static DeformationParams example3(double s);
  static DeformationParams example3b(double s);
  static DeformationParams example4(double alpha, double mu);
  static DeformationParams custom(double alpha, double beta, double gamma, double delta);

  double symplectic_defect() const { return std::abs(alpha * delta - beta * gamma - 1.0); }
  // Pair (b^dagger, a^dagger): the phi and Psi constructions swap roles.
  DeformationParams dual() const;
  std::string label() const;
};

// Throws ConfigError for non-finite or zero alpha/delta, NotCanonical for symplectic defect > 1e-12.
void validate(const DeformationParams& p);

template <class Scalar = Complex>
TruncatedOperator<Scalar> annihilation_matrix(const FockDim& dim) {
  const Index n = dim.size();
  TruncatedOperator<Scalar> c = TruncatedOperator<Scalar>::Zero(n, n);
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using std::sqrt;
  for (Index k = 0; k + 1 < n; ++k) c(k, k + 1) = Scalar(sqrt(static_cast<Real>(k + 1)));
  return c;
}

template <class Scalar = Complex>
TruncatedOperator<Scalar> creation_matrix(const FockDim& dim) {
  return annihilation_matrix<Scalar>(dim).adjoint();
}

// alpha c + beta c^dagger at arbitrary size; no canonicity check.
template <class Scalar = Complex>
TruncatedOperator<Scalar> bogoliubov_matrix(Scalar alpha, Scalar beta, const FockDim& dim) {
  const Index n = dim.size();
  TruncatedOperator<Scalar> m = TruncatedOperator<Scalar>::Zero(n, n);
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using std::sqrt;
  for (Index k = 0; k + 1 < n; ++k) {
    const Real r = sqrt(static_cast<Real>(k + 1));
    m(k, k + 1) = alpha * Scalar(r);
    m(k + 1, k) = beta * Scalar(r);
  }
  return m;
}

template <class Scalar = Complex>
struct OperatorPair {
  TruncatedOperator<Scalar> A;
  TruncatedOperator<Scalar> B;
};

template <class Scalar = Complex>
OperatorPair<Scalar> deformation_pair(const DeformationParams& p, const FockDim& dim) {
  validate(p);
  return {bogoliubov_matrix<Scalar>(Scalar(p.alpha), Scalar(p.beta), dim),
          bogoliubov_matrix<Scalar>(Scalar(p.gamma), Scalar(p.delta), dim)};
}

struct CommutatorDefect {
  double guarded = 0.0;  // spectral norm of the top-left (D-g+1) block of [A,B] - I
  double full = 0.0;     // same on the whole matrix
  bool reliable = true;  // false when g = 0
};

template <class DA, class DB>
CommutatorDefect commutator_defect(const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DB>& B,
                                   const FockDim& dim) {
  if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols())
    throw ConfigError("commutator_defect: shape mismatch");
  using Plain = typename DA::PlainObject;
  Plain d = A * B - B * A;
  d -= Plain::Identity(d.rows(), d.cols());
  const Index g = dim.guarded();
  return {spectral_norm(d.topLeftCorner(g, g)), spectral_norm(d), dim.guard > 0};
}

// Largest |i - j| over entries with magnitude above tol.
template <class Derived>
int bandwidth(const Eigen::MatrixBase<Derived>& m, double tol = 0.0) {
  int bw = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > tol) bw = std::max<int>(bw, static_cast<int>(std::abs(i - j)));
  return bw;
}

}  // namespace pbfock
