#include "pbfock/linalg.hpp"

#include <sstream>

namespace pbfock {

HermitianSpectrum hermitian_eigen(const MatrixXc& h) {
  MatrixXc sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(sym);
  if (es.info() != Eigen::Success) throw Error("hermitian_eigen: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

MatrixXc hermitian_power(const MatrixXc& h, double p, double floor) {
  auto sp = hermitian_eigen(h);
  if (sp.values.size() > 0 && sp.values(0) <= floor) {
    std::ostringstream os;
    os << "eigenvalue " << sp.values(0) << " below floor " << floor;
    throw NotPositiveDefinite(os.str());
  }
  Eigen::VectorXd d = sp.values.array().pow(p);
  return sp.vectors * d.asDiagonal() * sp.vectors.adjoint();
}

}  // namespace pbfock
