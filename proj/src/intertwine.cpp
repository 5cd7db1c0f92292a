#include "pbfock/intertwine.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "pbfock/linalg.hpp"

namespace pbfock {

namespace {

double guarded_norm(const MatrixXc& m, const FockDim& dim) { return spectral_norm(m.topRows(dim.guarded())); }

}  // namespace

double intertwining_defect_ladder(const MatrixXc& B, const MatrixXc& eta_phi, const MatrixXc& A_dag,
                                  const MatrixXc& span_q, const FockDim& dim) {
  const MatrixXc eq = eta_phi * span_q;
  return guarded_norm(B * eq - eta_phi * (A_dag * span_q), dim);
}

double intertwining_defect_adjoint(const MatrixXc& A_dag, const MatrixXc& eta_psi, const MatrixXc& B,
                                   const MatrixXc& span_q, const FockDim& dim) {
  const MatrixXc eq = eta_psi * span_q;
  return guarded_norm(A_dag * eq - eta_psi * (B * span_q), dim);
}

double pseudohermiticity_defect(const MatrixXc& N, const MatrixXc& eta_psi, const MatrixXc& span_q,
                                const FockDim& dim) {
  const MatrixXc eq = eta_psi * span_q;
  return guarded_norm(eta_psi * (N * span_q) - N.adjoint() * eq, dim);
}

std::vector<double> eigen_transport(const MatrixXc& N, const MatrixXc& eta_phi, const FockFamily& psis,
                                    int count) {
  const int c = count < 0 ? psis.nmax() + 1 : std::min(count, psis.nmax() + 1);
  const Index g = psis.dim.guarded();
  std::vector<double> res;
  for (int n = 0; n < c; ++n) {
    const VectorXc t = eta_phi * psis[n];
    res.push_back((N * t - static_cast<double>(n) * t).head(g).norm());
  }
  return res;
}

Eigen::VectorXcd compressed_spectrum(const MatrixXc& N, const MatrixXc& span_q) {
  const MatrixXc c = span_q.adjoint() * N * span_q;
  Eigen::ComplexEigenSolver<MatrixXc> es(c, false);
  Eigen::VectorXcd ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), [](Complex a, Complex b) { return a.real() < b.real(); });
  return ev;
}

}  // namespace pbfock
