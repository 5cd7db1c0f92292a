#pragma once

#include <vector>

#include "pbfock/fock_family.hpp"

namespace pbfock {

// || (B eta_phi - eta_phi A^dagger) Q || over rows 0..D-g, Q an orthonormal basis of the test span.
double intertwining_defect_ladder(const MatrixXc& B, const MatrixXc& eta_phi, const MatrixXc& A_dag,
                                  const MatrixXc& span_q, const FockDim& dim);

// || (A^dagger eta_psi - eta_psi B) Q || over rows 0..D-g.
double intertwining_defect_adjoint(const MatrixXc& A_dag, const MatrixXc& eta_psi, const MatrixXc& B,
                                   const MatrixXc& span_q, const FockDim& dim);

// || (eta_psi N - N^dagger eta_psi) Q || over rows 0..D-g.
double pseudohermiticity_defect(const MatrixXc& N, const MatrixXc& eta_psi, const MatrixXc& span_q,
                                const FockDim& dim);

// residual[n] = || N (eta_phi Psi_n) - n eta_phi Psi_n || over rows 0..D-g.
std::vector<double> eigen_transport(const MatrixXc& N, const MatrixXc& eta_phi, const FockFamily& psis,
                                    int count = -1);

// Eigenvalues (ascending by real part) of Q^dagger N Q.
Eigen::VectorXcd compressed_spectrum(const MatrixXc& N, const MatrixXc& span_q);

}  // namespace pbfock
