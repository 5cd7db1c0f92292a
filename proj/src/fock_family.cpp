#include "pbfock/fock_family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pbfock {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::phi: return "phi";
    case FamilyKind::psi: return "psi";
    case FamilyKind::hatted: return "hatted";
  }
  return "phi";
}

FockFamily FockFamily::head(int count) const {
  FockFamily out = *this;
  out.vectors = vectors.leftCols(count);
  out.tail_mass.assign(tail_mass.begin(), tail_mass.begin() + std::min<size_t>(count, tail_mass.size()));
  return out;
}

namespace {

std::string interval_reason(const DeformationParams& p) {
  switch (p.family) {
    case Family::harmonic: return "harmonic pair is always admissible";
    case Family::example3: return "outside (-1,1)";
    case Family::example3b: return "outside ((1-sqrt5)/2, (sqrt5-1)/2)";
    case Family::example4: return "outside 1 < mu < 1 + 1/(alpha^2-1)";
    case Family::custom: break;
  }
  return "requires |beta/alpha| < 1 and |gamma/delta| < 1";
}

}  // namespace

Admissibility admissible(const DeformationParams& p) {
  Admissibility a;
  if (p.alpha == 0.0 || p.delta == 0.0) {
    a.reason = "alpha and delta must be nonzero";
    return a;
  }
  const double rphi = std::abs(p.beta / p.alpha);
  const double rpsi = std::abs(p.gamma / p.delta);
  a.margin = 1.0 - std::max(rphi, rpsi);
  a.ok = rphi < 1.0 && rpsi < 1.0;
  if (!a.ok) {
    std::ostringstream os;
    os.precision(17);
    os << p.label() << ": " << interval_reason(p) << " (|beta/alpha| = " << rphi
       << ", |gamma/delta| = " << rpsi << ")";
    a.reason = os.str();
  }
  return a;
}

double squeezed_tail_mass(double ratio_abs, int levels) {
  if (ratio_abs == 0.0) return 0.0;
  if (ratio_abs >= 1.0) return 1.0;
  const double r = ratio_abs * ratio_abs;
  const long k0 = levels / 2 + 1;
  const double kd = static_cast<double>(k0);
  double term = std::exp(std::lgamma(2 * kd + 1) - 2 * std::lgamma(kd + 1) - kd * std::log(4.0) + kd * std::log(r));
  double sum = 0.0;
  for (long k = k0; term > 0.0; ++k) {
    sum += term;
    if (term < 1e-18 * sum) break;
    term *= r * (2.0 * k + 1.0) / (2.0 * k + 2.0);
  }
  return sum * std::sqrt(1.0 - r);
}

int squeezed_levels_for(double ratio_abs, double mass_tol) {
  int lo = 2, hi = 2;
  while (squeezed_tail_mass(ratio_abs, hi) >= mass_tol) {
    lo = hi;
    hi *= 2;
    if (hi > (1 << 22)) throw TruncationError("squeezed_levels_for: series converges too slowly");
  }
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (squeezed_tail_mass(ratio_abs, mid) >= mass_tol) lo = mid;
    else hi = mid;
  }
  return hi;
}

namespace {

void require_admissible(const DeformationParams& p) {
  validate(p);
  auto adm = admissible(p);
  if (!adm.ok) throw AdmissibilityError(adm.reason);
}

void require_tail(double tail, double tol, const char* what, const FockDim& dim) {
  if (tail >= tol) {
    std::ostringstream os;
    os << what << ": tail mass " << tail << " >= " << tol << " at D = " << dim.levels
       << "; increase D";
    throw TruncationError(os.str());
  }
}

Complex pairing_scale(const VectorXc& psi, const VectorXc& phi) {
  const Complex pair = psi.dot(phi);
  if (std::abs(pair) <= 1e-14 * psi.norm() * phi.norm())
    throw PairingError("<Psi0, phi0> vanishes; cannot normalize");
  return 1.0 / std::conj(pair);
}

}  // namespace

Vacuum vacuum_phi(const DeformationParams& p, const FockDim& dim, double tol) {
  require_admissible(p);
  Vacuum v;
  v.coeffs = squeezed_series<Complex>(p.alpha, p.beta, dim.size());
  v.coeffs.normalize();
  v.tail_mass = squeezed_tail_mass(std::abs(p.beta / p.alpha), dim.levels);
  v.normalization = Normalization::unit_norm;
  require_tail(v.tail_mass, tol, "vacuum_phi", dim);
  return v;
}

Vacuum vacuum_psi(const DeformationParams& p, const FockDim& dim, double tol, const Vacuum& phi0) {
  require_admissible(p);
  if (phi0.coeffs.size() != dim.size()) throw ConfigError("vacuum_psi: phi0 dimension mismatch");
  Vacuum v;
  v.coeffs = squeezed_series<Complex>(std::conj(Complex(p.delta)), std::conj(Complex(p.gamma)), dim.size());
  v.coeffs *= pairing_scale(v.coeffs, phi0.coeffs);
  v.tail_mass = squeezed_tail_mass(std::abs(p.gamma / p.delta), dim.levels);
  v.normalization = Normalization::pairing_normalized;
  require_tail(v.tail_mass, tol, "vacuum_psi", dim);
  return v;
}

FockFamily build_family(const Vacuum& vac, const MatrixXc& raiser, int nmax, const FockDim& dim,
                        FamilyKind kind, double tol) {
  if (vac.coeffs.size() != dim.size() || raiser.rows() != dim.size())
    throw ConfigError("build_family: dimension mismatch");
  if (nmax < 0 || nmax + dim.guard > dim.levels)
    throw ConfigError("build_family: requires nmax + g <= D");
  FockFamily fam;
  fam.kind = kind;
  fam.dim = dim;
  fam.vectors.resize(dim.size(), nmax + 1);
  fam.vectors.col(0) = vac.coeffs;
  for (int n = 1; n <= nmax; ++n)
    fam.vectors.col(n) = raiser * fam.vectors.col(n - 1) / std::sqrt(static_cast<double>(n));
  const Index top = dim.guard;
  for (int n = 0; n <= nmax; ++n) {
    const double total = fam.vectors.col(n).squaredNorm();
    const double t = top > 0 ? fam.vectors.col(n).tail(top).squaredNorm() / total : 0.0;
    fam.tail_mass.push_back(t);
    if (t > tol) {
      std::ostringstream os;
      os << "build_family: tail mass " << t << " of vector " << n << " exceeds " << tol;
      throw TruncationError(os.str());
    }
  }
  return fam;
}

int working_levels(const FockDim& dim) { return dim.levels + std::max(16, dim.levels / 2); }

namespace {

FockFamily truncate_family(const MatrixXc& work, const FockDim& dim, FamilyKind kind,
                           const DeformationParams& p) {
  FockFamily fam;
  fam.kind = kind;
  fam.params = p;
  fam.dim = dim;
  fam.vectors = work.topRows(dim.size());
  const Index extra = work.rows() - dim.size();
  for (Index n = 0; n < work.cols(); ++n)
    fam.tail_mass.push_back(work.col(n).tail(extra).squaredNorm() / work.col(n).squaredNorm());
  return fam;
}

}  // namespace

FamilyPair biorthogonal_families(const DeformationParams& p, const FockDim& dim, int nmax) {
  require_admissible(p);
  if (nmax < 0 || nmax > dim.levels) throw ConfigError("biorthogonal_families: requires 0 <= nmax <= D");
  const FockDim wdim(working_levels(dim), 0);
  const Complex a(p.alpha), b(p.beta), g(p.gamma), d(p.delta);

  VectorXc phi0 = squeezed_series<Complex>(a, b, wdim.size());
  phi0.normalize();
  VectorXc psi0 = squeezed_series<Complex>(std::conj(d), std::conj(g), wdim.size());
  psi0 *= pairing_scale(psi0, phi0);

  const MatrixXc A = bogoliubov_matrix<Complex>(a, b, wdim);
  const MatrixXc B = bogoliubov_matrix<Complex>(g, d, wdim);
  const MatrixXc phis = ladder_substitution<Complex>(phi0, A, B, nmax);
  const MatrixXc psis = ladder_substitution<Complex>(psi0, B.adjoint(), A.adjoint(), nmax);

  FamilyPair out;
  out.phis = truncate_family(phis, dim, FamilyKind::phi, p);
  out.psis = truncate_family(psis, dim, FamilyKind::psi, p);
  out.phi0.coeffs = out.phis.vectors.col(0);
  out.phi0.tail_mass = squeezed_tail_mass(std::abs(p.beta / p.alpha), dim.levels);
  out.phi0.normalization = Normalization::unit_norm;
  out.psi0.coeffs = out.psis.vectors.col(0);
  out.psi0.tail_mass = squeezed_tail_mass(std::abs(p.gamma / p.delta), dim.levels);
  out.psi0.normalization = Normalization::pairing_normalized;
  return out;
}

Biorthogonality biorthogonality_matrix(const FockFamily& psis, const FockFamily& phis) {
  if (psis.vectors.rows() != phis.vectors.rows() || psis.vectors.cols() != phis.vectors.cols())
    throw ConfigError("biorthogonality_matrix: families differ in shape");
  Biorthogonality b;
  b.matrix = psis.vectors.adjoint() * phis.vectors;
  b.defect = max_abs(b.matrix - MatrixXc::Identity(b.matrix.rows(), b.matrix.cols()));
  return b;
}

std::vector<double> ladder_check(const MatrixXc& lowering, const FockFamily& fam) {
  const Index g = fam.dim.guarded();
  std::vector<double> res;
  for (int n = 0; n <= fam.nmax(); ++n) {
    VectorXc r = (lowering * fam[n]).head(g);
    if (n > 0) r -= std::sqrt(static_cast<double>(n)) * fam[n - 1].head(g);
    res.push_back(r.norm());
  }
  return res;
}

std::vector<double> number_residuals(const MatrixXc& A, const MatrixXc& B, const FockFamily& fam) {
  const Index g = fam.dim.guarded();
  const bool psi = fam.kind == FamilyKind::psi;
  std::vector<double> res;
  for (int n = 0; n <= fam.nmax(); ++n) {
    VectorXc v = psi ? VectorXc(A.adjoint() * (B.adjoint() * fam[n])) : VectorXc(B * (A * fam[n]));
    res.push_back((v - static_cast<double>(n) * fam[n]).head(g).norm());
  }
  return res;
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace pbfock
