#pragma once

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "pbfock/types.hpp"

namespace pbfock {

template <class Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  using Plain = typename Derived::PlainObject;
  Eigen::BDCSVD<Plain> svd(m.eval());
  using std::abs;
  return static_cast<double>(abs(svd.singularValues()(0)));
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return static_cast<double>(m.cwiseAbs().maxCoeff());
}

template <class Derived>
double condition_number(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Eigen::BDCSVD<Plain> svd(m.eval());
  const auto& sv = svd.singularValues();
  return static_cast<double>(sv(0) / sv(sv.size() - 1));
}

struct HermitianSpectrum {
  Eigen::VectorXd values;  // ascending
  MatrixXc vectors;
};

HermitianSpectrum hermitian_eigen(const MatrixXc& h);

// V diag(lambda^p) V^dagger; throws NotPositiveDefinite when an eigenvalue is below floor.
MatrixXc hermitian_power(const MatrixXc& h, double p, double floor = 1e-13);

}  // namespace pbfock
