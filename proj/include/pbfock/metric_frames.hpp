#pragma once

#include <vector>

#include "pbfock/fock_family.hpp"

namespace pbfock {

struct GramMatrix {
  MatrixXc entries;  // (n, m) = <v_n, v_m>
  double eig_min = 0.0;
  double eig_max = 0.0;
};

GramMatrix gram(const FockFamily& fam);

// sum_n |v_n><v_n| in the Fock basis.
MatrixXc metric_operator(const FockFamily& fam);

// Orthonormal basis V G^{-1/2} of the span of the first `count` vectors (all when count < 0).
MatrixXc span_basis(const FockFamily& fam, int count = -1);
MatrixXc span_projector(const FockFamily& fam, int count = -1);

// || (eta_psi eta_phi - I) P || with P = Q Q^dagger.
double inverse_pair_defect(const MatrixXc& eta_phi, const MatrixXc& eta_psi, const MatrixXc& span_q);

struct RieszBrackets {
  std::vector<int> nmax;
  std::vector<double> lower;  // nonincreasing
  std::vector<double> upper;  // nondecreasing
};

RieszBrackets riesz_bounds(const FockFamily& fam, const std::vector<int>& nmax_sequence);

// S^{-1} v_n on the span.
FockFamily dual_family(const FockFamily& fam);

// S^{-1/2} v_n on the span.
FockFamily orthonormalize(const FockFamily& fam);

// Span-restricted powers of the frame operator S = sum |v_n><v_n|.
struct FrameRoots {
  MatrixXc half;      // S^{1/2}
  MatrixXc half_inv;  // S^{-1/2} (pseudo-inverse)
};

FrameRoots frame_roots(const FockFamily& fam);

// || sum_n |phi_n><psi_n| - I || on the top-left K x K block.
double resolution_defect(const FockFamily& phis, const FockFamily& psis, int K);

struct MetricReport {
  MatrixXc eta_phi;
  MatrixXc eta_psi;
  double inverse_defect = 0.0;
  RieszBrackets riesz_phi;
  RieszBrackets riesz_psi;
  double dual_defect = 0.0;
  double hatted_orthonormality_defect = 0.0;
  double hatted_coincidence = 0.0;
};

// Dual and hatted coincidence compared on vectors 0..compare_count-1.
MetricReport metric_report(const FockFamily& phis, const FockFamily& psis,
                           const std::vector<int>& nmax_sequence, int compare_count);

// Default bracketing sequence: nmax/4, nmax/2, 3 nmax/4, nmax (deduplicated, >= 1).
std::vector<int> default_nmax_sequence(int nmax);

}  // namespace pbfock
