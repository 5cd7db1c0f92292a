#pragma once

#include <vector>

#include "pbfock/metric_frames.hpp"

namespace pbfock {

struct CoherentState {
  Complex z;
  VectorXc coeffs;
  FamilyKind kind = FamilyKind::phi;
  double series_tail = 0.0;  // exp(-|z|^2) sum_{n > nmax} |z|^{2n} / n!
};

// exp(-x) sum_{n > nmax} x^n / n!, summed in log space.
double poisson_tail(double x, int nmax);

// exp(-|z|^2/2) z^n / sqrt(n!) for n = 0..nmax.
VectorXc coherent_weights(Complex z, int nmax);

// Largest |z| allowed by the tail rule |z|^2 <= nmax / 2.
bool tail_rule_ok(Complex z, int nmax);

// Throws TailError when the tail rule fails or the recorded tail exceeds tail_tol.
CoherentState coherent_state(Complex z, const FockFamily& fam, double tail_tol = 1e-8);
CoherentState hatted_coherent(Complex z, const FockFamily& hatted, double tail_tol = 1e-8);

// || (A x - z x) || / || x || over rows 0..D-g.
double eigen_residual(const MatrixXc& A, const CoherentState& state, const FockDim& dim);

// (1/pi) int_{|z|<=R} |w(z)><w(z)| d^2z for the weight vectors w(z) of coherent_weights.
// Gauss-Legendre in u = r^2 on [0, R^2], uniform angular grid rotated by `rotation`.
MatrixXc disk_moments(int nmax, double R, int n_radial, int n_angular, double rotation = 0.0);

struct QuadratureResult {
  double resolution_defect = 0.0;  // || int |phi(z)><Psi(z)| - I || on the K block
  double eta_phi_defect = 0.0;     // (phi, phi) pairing vs metric_operator(phis)
  double eta_psi_defect = 0.0;     // (Psi, Psi) pairing vs metric_operator(psis)
  double refinement_change = 0.0;  // change of the K blocks under 1.5x nodes
  bool tail_rule_ok = true;        // R^2 >= nmax + 4 sqrt(nmax)
};

// Throws QuadratureError when 1.5x nodes changes any K block by more than tol.
QuadratureResult resolution_quadrature(const FockFamily& phis, const FockFamily& psis, double R,
                                       int n_radial, int n_angular, int K, double tol,
                                       double rotation = 0.0);

// S^{-1/2} A S^{1/2}.
MatrixXc a_phi_operator(const MatrixXc& S_half, const MatrixXc& S_half_inv, const MatrixXc& A);

// max_n || a_phi hat_n - sqrt(n) hat_{n-1} ||.
double hatted_ladder_defect(const MatrixXc& a_phi, const FockFamily& hatted);

// || hat^dagger [a_phi, a_phi^dagger] hat - I || on hatted levels 0..nmax-g.
double hatted_commutator_defect(const MatrixXc& a_phi, const FockFamily& hatted, int guard);

struct Uncertainty {
  double dx = 0.0;
  double dp = 0.0;
  double product = 0.0;
};

Uncertainty heisenberg(const CoherentState& state, const MatrixXc& a_phi);
double heisenberg_product(const CoherentState& state, const MatrixXc& a_phi);

struct NumberConsistency {
  double eigen = 0.0;   // max_{n <= nmax-4} || N_phi hat_n - n hat_n ||
  double matrix = 0.0;  // || hat^dagger (N_phi - a_phi^dagger a_phi) hat || on hatted levels 0..nmax-g
};

// N_phi = S^{-1/2} N S^{1/2}.
MatrixXc n_phi_operator(const FrameRoots& roots, const MatrixXc& N);
NumberConsistency n_phi_consistency(const FrameRoots& roots, const MatrixXc& N, const MatrixXc& a_phi,
                                    const FockFamily& hatted);

}  // namespace pbfock
