#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pbfock/coherent.hpp"

using namespace pbfock;

namespace {

FamilyPair families(const DeformationParams& p, int levels, int nmax) {
  return biorthogonal_families(p, FockDim(levels, 4), nmax);
}

}  // namespace

TEST(Coherent, PoissonTailAndWeights) {
  EXPECT_EQ(poisson_tail(0.0, 5), 0.0);
  for (int n : {2, 10, 24})
    for (double x : {0.5, 1.0, 4.0}) EXPECT_NEAR(poisson_tail(x, n), oracle::lower_gamma_p(n, x), 1e-15);
  const VectorXc w = coherent_weights(Complex(0.3, -0.4), 60);
  EXPECT_NEAR(w.squaredNorm(), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(w(1) - Complex(0.3, -0.4) * std::exp(-0.125)), 0.0, 1e-15);
  EXPECT_TRUE(tail_rule_ok(Complex(2, 0), 8));
  EXPECT_FALSE(tail_rule_ok(Complex(2, 0.1), 8));
}

TEST(Coherent, StateSeries) {
  const auto fp = families(DeformationParams::example3(0.5), 100, 24);
  const auto z0 = coherent_state(0.0, fp.phis);
  EXPECT_EQ(z0.coeffs, VectorXc(fp.phis[0]));
  EXPECT_EQ(z0.series_tail, 0.0);

  const auto ccr = families(DeformationParams::example3(0.0), 100, 24);
  const auto c1 = coherent_state(1.0, ccr.phis);
  EXPECT_NEAR(c1.coeffs.squaredNorm(), 1.0 - c1.series_tail, 1e-14);

  const auto big = coherent_state(Complex(1.0, 0.5), fp.phis);
  EXPECT_LE(big.coeffs.norm(), fp.phis.vectors.colwise().norm().maxCoeff());

  EXPECT_THROW(coherent_state(Complex(4.0, 0.0), fp.phis), TailError);
  EXPECT_THROW(coherent_state(1.0, fp.phis.head(3), 1e-8), TailError);
}

TEST(Coherent, EigenResiduals) {
  const FockDim dim(100, 4);
  const auto p = DeformationParams::example3(0.5);
  const auto pr = deformation_pair(p, dim);
  const auto fp = biorthogonal_families(p, dim, 24);
  EXPECT_LT(eigen_residual(pr.A, coherent_state(0.0, fp.phis), dim), 1e-12);
  EXPECT_LT(eigen_residual(pr.A, coherent_state(1.0, fp.phis), dim), 1e-6);
  const MatrixXc Bd = pr.B.adjoint();
  EXPECT_LT(eigen_residual(Bd, coherent_state(Complex(0.0, 0.8), fp.psis), dim), 1e-6);
}

TEST(Coherent, DiskMomentsMatchIncompleteGamma) {
  const int nmax = 12;
  const double R = 3.0;
  const MatrixXc m = disk_moments(nmax, R, 48, nmax + 4);
  for (int n = 0; n <= nmax; ++n)
    for (int k = 0; k <= nmax; ++k) {
      const double expected = n == k ? oracle::lower_gamma_p(n, R * R) : 0.0;
      EXPECT_NEAR(std::abs(m(n, k) - expected), 0.0, 1e-12) << n << "," << k;
    }
  EXPECT_THROW(disk_moments(4, 1.0, 0, 4), ConfigError);
}

TEST(Coherent, QuadratureCcrAndEta) {
  const auto ccr = families(DeformationParams::example3(0.0), 100, 20);
  const auto q0 = resolution_quadrature(ccr.phis, ccr.psis, 7.0, 64, 28, 8, 1e-5);
  EXPECT_LT(q0.resolution_defect, 1e-6);
  EXPECT_TRUE(q0.tail_rule_ok);

  const auto fp = families(DeformationParams::example3(0.5), 100, 20);
  const auto q = resolution_quadrature(fp.phis, fp.psis, 7.0, 64, 28, 8, 1e-5);
  EXPECT_LT(q.eta_phi_defect, 1e-5);
  EXPECT_LT(q.eta_psi_defect, 1e-5);
}

TEST(Coherent, QuadratureRotationInvariance) {
  const auto fp = families(DeformationParams::example3(0.3), 100, 20);
  const auto a = resolution_quadrature(fp.phis, fp.psis, 7.0, 64, 28, 8, 1e-5);
  const auto b = resolution_quadrature(fp.phis, fp.psis, 7.0, 64, 28, 8, 1e-5, 0.377);
  EXPECT_NEAR(a.resolution_defect, b.resolution_defect, 1e-10);
  EXPECT_NEAR(a.eta_phi_defect, b.eta_phi_defect, 1e-10);
}

TEST(Coherent, QuadratureSmallRadiusFails) {
  const auto ccr = families(DeformationParams::example3(0.0), 100, 20);
  const auto q = resolution_quadrature(ccr.phis, ccr.psis, 3.5, 64, 28, 8, 1e-5);
  EXPECT_FALSE(q.tail_rule_ok);
  // the missing mass on level 7 is 1 - P(8, R^2)
  EXPECT_NEAR(q.resolution_defect, 1.0 - oracle::lower_gamma_p(7, 3.5 * 3.5), 1e-10);
  EXPECT_GT(q.resolution_defect, 1e-6);
}

TEST(Coherent, QuadratureRefinementGuard) {
  const auto ccr = families(DeformationParams::example3(0.0), 100, 20);
  EXPECT_THROW(resolution_quadrature(ccr.phis, ccr.psis, 7.0, 4, 28, 8, 1e-8), QuadratureError);
  EXPECT_THROW(resolution_quadrature(ccr.phis, ccr.psis, 7.0, 64, 28, 0, 1e-8), ConfigError);
}

TEST(Coherent, HattedStates) {
  const auto fp = families(DeformationParams::example3(0.5), 100, 24);
  const auto hat = orthonormalize(fp.phis);
  const auto roots = frame_roots(fp.phis);
  EXPECT_NEAR(hatted_coherent(0.0, hat).coeffs.norm(), 1.0, 1e-12);
  const auto h12 = hatted_coherent(1.2, hat);
  EXPECT_EQ(h12.kind, FamilyKind::hatted);
  EXPECT_NEAR(h12.coeffs.squaredNorm() + h12.series_tail, 1.0, 1e-8);
  const auto h1 = hatted_coherent(1.0, hat);
  EXPECT_LT((roots.half * h1.coeffs - coherent_state(1.0, fp.phis).coeffs).norm(), 1e-6);
}

TEST(Coherent, APhiOperator) {
  const FockDim dim(100, 4);
  const auto ccr = families(DeformationParams::example3(0.0), 100, 20);
  const auto r0 = frame_roots(ccr.phis);
  const MatrixXc a0 = a_phi_operator(r0.half, r0.half_inv, annihilation_matrix(dim));
  EXPECT_LT(max_abs(MatrixXc(a0.topLeftCorner(21, 21) - annihilation_matrix(FockDim(20, 0)))), 1e-15);

  const auto p = DeformationParams::example3(0.5);
  const auto pr = deformation_pair(p, dim);
  const auto fp = biorthogonal_families(p, dim, 20);
  const auto roots = frame_roots(fp.phis);
  const auto hat = orthonormalize(fp.phis);
  const MatrixXc aphi = a_phi_operator(roots.half, roots.half_inv, pr.A);
  EXPECT_LT(hatted_ladder_defect(aphi, hat.head(13)), 1e-6);
  EXPECT_LT(hatted_commutator_defect(aphi, hat, 4), 1e-6);
  EXPECT_LT(eigen_residual(aphi, hatted_coherent(0.7, hat), dim), 1e-6);
}

TEST(Coherent, Heisenberg) {
  const FockDim dim(100, 4);
  const auto ccr = families(DeformationParams::example3(0.0), 100, 20);
  const auto r0 = frame_roots(ccr.phis);
  const MatrixXc a0 = a_phi_operator(r0.half, r0.half_inv, annihilation_matrix(dim));
  EXPECT_NEAR(heisenberg_product(hatted_coherent(0.0, orthonormalize(ccr.phis)), a0), 0.5, 1e-14);

  for (const auto& [s, z, tol] : {std::tuple{0.5, Complex(1.0, 0.0), 1e-6}, std::tuple{0.3, Complex(0.0, 2.0), 1e-5}}) {
    const auto p = DeformationParams::example3(s);
    const auto fp = biorthogonal_families(p, dim, 24);
    const auto roots = frame_roots(fp.phis);
    const MatrixXc aphi = a_phi_operator(roots.half, roots.half_inv, deformation_pair(p, dim).A);
    const auto u = heisenberg(hatted_coherent(z, orthonormalize(fp.phis)), aphi);
    EXPECT_NEAR(u.product, 0.5, tol) << s;
    EXPECT_NEAR(u.dx, std::sqrt(0.5), tol) << s;
  }
}

TEST(Coherent, NumberOperatorConsistency) {
  const FockDim dim(100, 4);
  for (double s : {0.0, 0.5}) {
    const auto p = DeformationParams::example3(s);
    const auto pr = deformation_pair(p, dim);
    const auto fp = biorthogonal_families(p, dim, 16);
    const auto roots = frame_roots(fp.phis);
    const auto hat = orthonormalize(fp.phis);
    const MatrixXc N = pr.B * pr.A;
    const MatrixXc aphi = a_phi_operator(roots.half, roots.half_inv, pr.A);
    const auto nc = n_phi_consistency(roots, N, aphi, hat);
    EXPECT_LT(nc.eigen, s == 0.0 ? 1e-13 : 1e-6) << s;
    EXPECT_LT(nc.matrix, s == 0.0 ? 1e-13 : 1e-6) << s;

    // N_phi against the Psi-side construction S_psi^{-1/2} N^dagger S_psi^{1/2}
    const auto roots_psi = frame_roots(fp.psis);
    const auto hat_psi = orthonormalize(fp.psis);
    const MatrixXc nphi = n_phi_operator(roots, N);
    const MatrixXc npsi = n_phi_operator(roots_psi, N.adjoint());
    const MatrixXc cphi = hat.vectors.adjoint() * nphi * hat.vectors;
    const MatrixXc cpsi = hat_psi.vectors.adjoint() * npsi * hat_psi.vectors;
    EXPECT_LT(spectral_norm(MatrixXc(cphi.topLeftCorner(13, 13) - cpsi.topLeftCorner(13, 13))), 1e-6) << s;
  }
}

TEST(Coherent, NormBoundedByMetric) {
  const auto fp = families(DeformationParams::example3(0.5), 100, 20);
  const double top = gram(fp.phis).eig_max;
  for (int n = 0; n <= 20; ++n) EXPECT_LE(fp.phis[n].norm(), std::sqrt(top) * (1 + 1e-12));
}
