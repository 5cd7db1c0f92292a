#include "pbfock/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pbfock/quadrature.hpp"

namespace pbfock {

double poisson_tail(double x, int nmax) {
  if (x <= 0.0) return 0.0;
  const double lx = std::log(x);
  double sum = 0.0;
  for (int n = nmax + 1;; ++n) {
    const double term = std::exp(-x + n * lx - std::lgamma(n + 1.0));
    sum += term;
    if (n > x && term < 1e-17 * sum) break;
    if (n > nmax + 100000) break;
  }
  return sum;
}

VectorXc coherent_weights(Complex z, int nmax) {
  VectorXc w = VectorXc::Zero(nmax + 1);
  const double r = std::abs(z);
  if (r == 0.0) {
    w(0) = 1.0;
    return w;
  }
  const double lr = std::log(r), th = std::arg(z);
  for (int n = 0; n <= nmax; ++n)
    w(n) = std::polar(std::exp(-0.5 * r * r + n * lr - 0.5 * std::lgamma(n + 1.0)), n * th);
  return w;
}

bool tail_rule_ok(Complex z, int nmax) { return std::norm(z) <= 0.5 * nmax; }

namespace {

CoherentState series_state(Complex z, const FockFamily& fam, double tail_tol, FamilyKind kind) {
  const int nmax = fam.nmax();
  std::ostringstream os;
  if (!tail_rule_ok(z, nmax)) {
    os << "coherent state at |z|^2 = " << std::norm(z) << " violates the tail rule |z|^2 <= nmax/2 = "
       << 0.5 * nmax;
    throw TailError(os.str());
  }
  CoherentState st;
  st.z = z;
  st.kind = kind;
  st.series_tail = poisson_tail(std::norm(z), nmax);
  if (st.series_tail > tail_tol) {
    os << "coherent series tail " << st.series_tail << " exceeds " << tail_tol;
    throw TailError(os.str());
  }
  st.coeffs = fam.vectors * coherent_weights(z, nmax);
  return st;
}

}  // namespace

CoherentState coherent_state(Complex z, const FockFamily& fam, double tail_tol) {
  return series_state(z, fam, tail_tol, fam.kind);
}

CoherentState hatted_coherent(Complex z, const FockFamily& hatted, double tail_tol) {
  return series_state(z, hatted, tail_tol, FamilyKind::hatted);
}

double eigen_residual(const MatrixXc& A, const CoherentState& state, const FockDim& dim) {
  const VectorXc r = A * state.coeffs - state.z * state.coeffs;
  return r.head(dim.guarded()).norm() / state.coeffs.norm();
}

MatrixXc disk_moments(int nmax, double R, int n_radial, int n_angular, double rotation) {
  if (n_radial < 1 || n_angular < 1) throw ConfigError("disk_moments: node counts must be positive");
  const QuadratureRule gl = gauss_legendre(n_radial, 0.0, R * R);
  MatrixXc m = MatrixXc::Zero(nmax + 1, nmax + 1);
  for (int i = 0; i < n_radial; ++i) {
    const double r = std::sqrt(gl.nodes(i));
    const double wt = gl.weights(i) / n_angular;
    for (int j = 0; j < n_angular; ++j) {
      const double th = rotation + 2.0 * std::numbers::pi * j / n_angular;
      const VectorXc w = coherent_weights(std::polar(r, th), nmax);
      m.noalias() += wt * w * w.adjoint();
    }
  }
  return m;
}

namespace {

struct Blocks {
  MatrixXc phi_psi, phi_phi, psi_psi;
};

Blocks quadrature_blocks(const FockFamily& phis, const FockFamily& psis, double R, int n_radial,
                         int n_angular, int K, double rotation) {
  const MatrixXc m = disk_moments(phis.nmax(), R, n_radial, n_angular, rotation);
  const MatrixXc l = phis.vectors.topRows(K);
  const MatrixXc r = psis.vectors.topRows(K);
  return {l * m * r.adjoint(), l * m * l.adjoint(), r * m * r.adjoint()};
}

}  // namespace

QuadratureResult resolution_quadrature(const FockFamily& phis, const FockFamily& psis, double R,
                                       int n_radial, int n_angular, int K, double tol, double rotation) {
  const int nmax = phis.nmax();
  if (psis.nmax() != nmax) throw ConfigError("resolution_quadrature: families differ in nmax");
  if (K < 1 || K > nmax + 1 || K > phis.vectors.rows())
    throw ConfigError("resolution_quadrature: invalid block size");
  QuadratureResult q;
  q.tail_rule_ok = R * R >= nmax + 4.0 * std::sqrt(static_cast<double>(nmax));
  const Blocks b = quadrature_blocks(phis, psis, R, n_radial, n_angular, K, rotation);
  const Blocks f = quadrature_blocks(phis, psis, R, (3 * n_radial + 1) / 2, (3 * n_angular + 1) / 2, K,
                                     rotation);
  q.refinement_change = std::max({spectral_norm(b.phi_psi - f.phi_psi), spectral_norm(b.phi_phi - f.phi_phi),
                                   spectral_norm(b.psi_psi - f.psi_psi)});
  if (q.refinement_change > tol) {
    std::ostringstream os;
    os << "quadrature not converged: 1.5x nodes changes the result by " << q.refinement_change;
    throw QuadratureError(os.str());
  }
  q.resolution_defect = spectral_norm(b.phi_psi - MatrixXc::Identity(K, K));
  const MatrixXc eta_phi = metric_operator(phis).topLeftCorner(K, K);
  const MatrixXc eta_psi = metric_operator(psis).topLeftCorner(K, K);
  q.eta_phi_defect = spectral_norm(b.phi_phi - eta_phi);
  q.eta_psi_defect = spectral_norm(b.psi_psi - eta_psi);
  return q;
}

MatrixXc a_phi_operator(const MatrixXc& S_half, const MatrixXc& S_half_inv, const MatrixXc& A) {
  return S_half_inv * (A * S_half);
}

double hatted_ladder_defect(const MatrixXc& a_phi, const FockFamily& hatted) {
  double worst = 0.0;
  for (int n = 0; n <= hatted.nmax(); ++n) {
    VectorXc r = a_phi * hatted[n];
    if (n > 0) r -= std::sqrt(static_cast<double>(n)) * hatted[n - 1];
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double hatted_commutator_defect(const MatrixXc& a_phi, const FockFamily& hatted, int guard) {
  const MatrixXc comm = a_phi * a_phi.adjoint() - a_phi.adjoint() * a_phi;
  const MatrixXc c = hatted.vectors.adjoint() * comm * hatted.vectors;
  const Index k = std::max<Index>(1, hatted.nmax() + 1 - guard);
  return spectral_norm(c.topLeftCorner(k, k) - MatrixXc::Identity(k, k));
}

Uncertainty heisenberg(const CoherentState& state, const MatrixXc& a_phi) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const VectorXc& psi = state.coeffs;
  const double nrm2 = psi.squaredNorm();
  const VectorXc ap = a_phi * psi;
  const VectorXc adp = a_phi.adjoint() * psi;
  const VectorXc xpsi = inv_sqrt2 * (ap + adp);
  const VectorXc ppsi = Complex(0.0, -1.0) * inv_sqrt2 * (ap - adp);
  const double mx = psi.dot(xpsi).real() / nrm2;
  const double mp = psi.dot(ppsi).real() / nrm2;
  const double vx = xpsi.squaredNorm() / nrm2 - mx * mx;
  const double vp = ppsi.squaredNorm() / nrm2 - mp * mp;
  Uncertainty u;
  u.dx = std::sqrt(std::max(vx, 0.0));
  u.dp = std::sqrt(std::max(vp, 0.0));
  u.product = u.dx * u.dp;
  return u;
}

double heisenberg_product(const CoherentState& state, const MatrixXc& a_phi) {
  return heisenberg(state, a_phi).product;
}

MatrixXc n_phi_operator(const FrameRoots& roots, const MatrixXc& N) {
  return roots.half_inv * (N * roots.half);
}

NumberConsistency n_phi_consistency(const FrameRoots& roots, const MatrixXc& N, const MatrixXc& a_phi,
                                    const FockFamily& hatted) {
  const MatrixXc nphi = n_phi_operator(roots, N);
  NumberConsistency c;
  const int top = std::max(0, hatted.nmax() - 4);
  for (int n = 0; n <= top; ++n)
    c.eigen = std::max(c.eigen, (nphi * hatted[n] - static_cast<double>(n) * hatted[n]).norm());
  const MatrixXc diff = hatted.vectors.adjoint() * (nphi - a_phi.adjoint() * a_phi) * hatted.vectors;
  const Index k = std::max<Index>(1, hatted.nmax() + 1 - hatted.dim.guard);
  c.matrix = spectral_norm(diff.topLeftCorner(k, k));
  return c;
}

}  // namespace pbfock
