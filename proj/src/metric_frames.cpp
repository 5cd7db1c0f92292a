#include "pbfock/metric_frames.hpp"

#include <algorithm>
#include <sstream>

namespace pbfock {

namespace {

constexpr double kFloor = 1e-13;

MatrixXc vectors_of(const FockFamily& fam, int count) {
  return count < 0 ? fam.vectors : MatrixXc(fam.vectors.leftCols(count));
}

// G^p for the Gram matrix of the columns of v.
MatrixXc gram_power(const MatrixXc& v, double p) {
  try {
    return hermitian_power(v.adjoint() * v, p, kFloor);
  } catch (const NotPositiveDefinite& e) {
    throw NotPositiveDefinite(std::string("Gram matrix: ") + e.what());
  }
}

FockFamily with_vectors(const FockFamily& fam, MatrixXc v, FamilyKind kind) {
  FockFamily out = fam;
  out.vectors = std::move(v);
  out.kind = kind;
  return out;
}

}  // namespace

GramMatrix gram(const FockFamily& fam) {
  GramMatrix g;
  g.entries = fam.vectors.adjoint() * fam.vectors;
  auto sp = hermitian_eigen(g.entries);
  g.eig_min = sp.values(0);
  g.eig_max = sp.values(sp.values.size() - 1);
  if (g.eig_min <= 0.0) {
    std::ostringstream os;
    os << "Gram matrix not positive definite (eig_min = " << g.eig_min << ")";
    throw NotPositiveDefinite(os.str());
  }
  return g;
}

MatrixXc metric_operator(const FockFamily& fam) { return fam.vectors * fam.vectors.adjoint(); }

MatrixXc span_basis(const FockFamily& fam, int count) {
  const MatrixXc v = vectors_of(fam, count);
  return v * gram_power(v, -0.5);
}

MatrixXc span_projector(const FockFamily& fam, int count) {
  const MatrixXc q = span_basis(fam, count);
  return q * q.adjoint();
}

double inverse_pair_defect(const MatrixXc& eta_phi, const MatrixXc& eta_psi, const MatrixXc& span_q) {
  return spectral_norm(eta_psi * (eta_phi * span_q) - span_q);
}

RieszBrackets riesz_bounds(const FockFamily& fam, const std::vector<int>& nmax_sequence) {
  if (nmax_sequence.size() < 2) throw ConfigError("riesz_bounds: need at least two nmax values");
  RieszBrackets rb;
  for (int k : nmax_sequence) {
    if (k < 0 || k > fam.nmax()) throw ConfigError("riesz_bounds: nmax out of range");
    auto g = gram(fam.head(k + 1));
    rb.nmax.push_back(k);
    rb.lower.push_back(g.eig_min);
    rb.upper.push_back(g.eig_max);
  }
  return rb;
}

FockFamily dual_family(const FockFamily& fam) {
  return with_vectors(fam, fam.vectors * gram_power(fam.vectors, -1.0),
                      fam.kind == FamilyKind::phi ? FamilyKind::psi : FamilyKind::phi);
}

FockFamily orthonormalize(const FockFamily& fam) {
  return with_vectors(fam, fam.vectors * gram_power(fam.vectors, -0.5), FamilyKind::hatted);
}

FrameRoots frame_roots(const FockFamily& fam) {
  const MatrixXc& v = fam.vectors;
  auto sp = hermitian_eigen(v.adjoint() * v);
  if (sp.values(0) <= kFloor) {
    std::ostringstream os;
    os << "Gram matrix: eigenvalue " << sp.values(0) << " below floor " << kFloor;
    throw NotPositiveDefinite(os.str());
  }
  const MatrixXc vu = v * sp.vectors;
  Eigen::VectorXd m12 = sp.values.array().pow(-0.5);
  Eigen::VectorXd m32 = sp.values.array().pow(-1.5);
  return {vu * m12.asDiagonal() * vu.adjoint(), vu * m32.asDiagonal() * vu.adjoint()};
}

double resolution_defect(const FockFamily& phis, const FockFamily& psis, int K) {
  if (K < 1 || K > phis.vectors.rows()) throw ConfigError("resolution_defect: invalid block size");
  MatrixXc sum = phis.vectors.topRows(K) * psis.vectors.topRows(K).adjoint();
  sum -= MatrixXc::Identity(K, K);
  return spectral_norm(sum);
}

std::vector<int> default_nmax_sequence(int nmax) {
  std::vector<int> seq;
  for (int q = 1; q <= 4; ++q) {
    const int k = std::max(1, nmax * q / 4);
    if (seq.empty() || seq.back() != k) seq.push_back(k);
  }
  if (seq.size() < 2) seq.insert(seq.begin(), 0);
  return seq;
}

MetricReport metric_report(const FockFamily& phis, const FockFamily& psis,
                           const std::vector<int>& nmax_sequence, int compare_count) {
  MetricReport r;
  r.eta_phi = metric_operator(phis);
  r.eta_psi = metric_operator(psis);
  r.inverse_defect = inverse_pair_defect(r.eta_phi, r.eta_psi, span_basis(psis));
  r.riesz_phi = riesz_bounds(phis, nmax_sequence);
  r.riesz_psi = riesz_bounds(psis, nmax_sequence);
  const int c = std::min(compare_count, phis.nmax() + 1);
  const FockFamily dual = dual_family(phis);
  r.dual_defect = (dual.vectors.leftCols(c) - psis.vectors.leftCols(c)).colwise().norm().maxCoeff();
  const FockFamily hat = orthonormalize(phis);
  r.hatted_orthonormality_defect =
      max_abs(hat.vectors.adjoint() * hat.vectors - MatrixXc::Identity(hat.vectors.cols(), hat.vectors.cols()));
  const MatrixXc hat_psi = frame_roots(phis).half * psis.vectors;
  r.hatted_coincidence = (hat_psi.leftCols(c) - hat.vectors.leftCols(c)).colwise().norm().maxCoeff();
  return r;
}

}  // namespace pbfock
