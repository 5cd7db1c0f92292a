#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pbfock/fock_family.hpp"

using namespace pbfock;

namespace {

double odd_mass(const MatrixXc& v) {
  double m = 0.0;
  for (Index r = 1; r < v.rows(); r += 2) m = std::max(m, v.row(r).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

TEST(FockFamily, VacuumPhiMatchesNullVectorOracle) {
  const FockDim dim(100, 4);
  const auto p = DeformationParams::example3(0.5);
  const auto vac = vacuum_phi(p, dim, 1e-8);
  EXPECT_NEAR(std::abs(vac.coeffs.norm() - 1.0), 0.0, 1e-14);
  EXPECT_NEAR((vac.coeffs(2) / vac.coeffs(0)).real(), -0.25 * std::sqrt(2.0), 1e-10);
  const auto pr = deformation_pair(p, dim);
  EXPECT_LT(oracle::phase_distance(vac.coeffs, oracle::null_vector(pr.A)), 1e-10);
}

TEST(FockFamily, VacuumCcrIsGroundState) {
  const FockDim dim(30, 2);
  const auto vac = vacuum_phi(DeformationParams::example3(0.0), dim, 1e-8);
  VectorXc e0 = VectorXc::Zero(31);
  e0(0) = 1.0;
  EXPECT_EQ(vac.coeffs, e0);
  const auto psi = vacuum_psi(DeformationParams::example3(0.0), dim, 1e-8, vac);
  EXPECT_EQ(psi.coeffs, e0);
}

TEST(FockFamily, VacuumExample4) {
  const FockDim dim(100, 4);
  const auto p = DeformationParams::example4(2.0, 1.2);
  const auto vac = vacuum_phi(p, dim, 1e-8);
  // coefficient of |2> over |0> is t sqrt(2) with t = -1/(2 mu)
  EXPECT_NEAR((vac.coeffs(2) / vac.coeffs(0)).real(), -std::sqrt(2.0) / (2.0 * 1.2), 1e-12);
  EXPECT_EQ(odd_mass(vac.coeffs), 0.0);
  EXPECT_LT(oracle::phase_distance(vac.coeffs, oracle::null_vector(deformation_pair(p, dim).A)), 1e-10);
}

TEST(FockFamily, VacuumPsiPairing) {
  const FockDim dim(100, 4);
  for (const auto& [p, t] : {std::pair{DeformationParams::example3(0.5), -0.2},
                             std::pair{DeformationParams::example3b(0.5), 1.0 / 3.0}}) {
    const auto phi0 = vacuum_phi(p, dim, 1e-8);
    const auto psi0 = vacuum_psi(p, dim, 1e-8, phi0);
    EXPECT_NEAR((psi0.coeffs(2) / psi0.coeffs(0)).real(), t * std::sqrt(2.0), 1e-12) << p.label();
    EXPECT_NEAR(std::abs(psi0.coeffs.dot(phi0.coeffs) - 1.0), 0.0, 1e-12);
    const MatrixXc Bd = deformation_pair(p, dim).B.adjoint();
    EXPECT_LT(oracle::phase_distance(psi0.coeffs.normalized(), oracle::null_vector(Bd)), 1e-10);
  }
}

TEST(FockFamily, VacuumErrors) {
  EXPECT_THROW(vacuum_phi(DeformationParams::example3(1.2), FockDim(100, 4), 1e-8), AdmissibilityError);
  EXPECT_THROW(vacuum_phi(DeformationParams::example3(0.99), FockDim(20, 2), 1e-8), TruncationError);
}

TEST(FockFamily, Admissibility) {
  const auto a = admissible(DeformationParams::example3(0.999));
  EXPECT_TRUE(a.ok);
  EXPECT_NEAR(a.margin, 0.001, 1e-12);
  const auto b = admissible(DeformationParams::example3b(0.7));
  EXPECT_FALSE(b.ok);
  EXPECT_TRUE(admissible(DeformationParams::example3b(0.6)).ok);
  EXPECT_TRUE(admissible(DeformationParams::example4(2.0, 1.2)).ok);
  EXPECT_FALSE(admissible(DeformationParams::example4(2.0, 1.34)).ok);
  const auto c = admissible(DeformationParams::example3(1.2));
  EXPECT_FALSE(c.ok);
  EXPECT_NE(c.reason.find("outside (-1,1)"), std::string::npos);
}

TEST(FockFamily, SqueezedTailMass) {
  // Exact relative tail vs brute-force summation of a long series.
  const double r = 0.5;
  const VectorXc f = squeezed_series<Complex>(1.0, r, 2001);
  const double total = f.squaredNorm();
  for (int levels : {10, 40, 80}) {
    const double tail = f.tail(2001 - levels - 1).squaredNorm() / total;
    EXPECT_NEAR(squeezed_tail_mass(r, levels) / tail, 1.0, 1e-8) << levels;
  }
  const int n = squeezed_levels_for(r, 1e-20);
  EXPECT_LE(squeezed_tail_mass(r, n), 1e-20);
  EXPECT_GT(squeezed_tail_mass(r, n - 2), 1e-20);
}

TEST(FockFamily, BuildFamilyCcrAndFirstStep) {
  const FockDim dim(40, 4);
  const auto vac = vacuum_phi(DeformationParams::example3(0.0), dim, 1e-8);
  const auto fam = build_family(vac, creation_matrix(dim), 20, dim, FamilyKind::phi, 1e-8);
  EXPECT_LT((fam.vectors - MatrixXc::Identity(41, 21)).cwiseAbs().maxCoeff(), 1e-14);

  const FockDim d100(100, 4);
  const auto p = DeformationParams::example3(0.5);
  const auto pr = deformation_pair(p, d100);
  const auto v5 = vacuum_phi(p, d100, 1e-8);
  const auto f5 = build_family(v5, pr.B, 3, d100, FamilyKind::phi, 1e-8);
  EXPECT_LT((f5[1] - pr.B * v5.coeffs).norm(), 1e-15);
  EXPECT_THROW(build_family(v5, pr.B, 96, d100, FamilyKind::phi, 1e-8), TruncationError);
  EXPECT_THROW(build_family(v5, pr.B, 98, d100, FamilyKind::phi, 1e-8), ConfigError);
}

TEST(FockFamily, StableBuilderAgreesWithRecursionAtLowOrder) {
  const FockDim dim(100, 4);
  const auto p = DeformationParams::example3(0.5);
  const auto pr = deformation_pair(p, dim);
  const auto fp = biorthogonal_families(p, dim, 20);
  const auto rec = build_family(fp.phi0, pr.B, 8, dim, FamilyKind::phi, 1e-8);
  for (int n = 0; n <= 8; ++n) EXPECT_LT((rec[n] - fp.phis[n]).norm(), 1e-9) << n;
}

TEST(FockFamily, BiorthogonalityDeformed) {
  const FockDim dim(100, 4);
  const auto fp = biorthogonal_families(DeformationParams::example3(0.5), dim, 20);
  const auto bo = biorthogonality_matrix(fp.psis, fp.phis);
  EXPECT_LT(bo.defect, 1e-8);
  // brute force inner products
  for (int n = 0; n <= 20; ++n) {
    Complex s = 0.0;
    for (Index k = 0; k < fp.phis.vectors.rows(); ++k) s += std::conj(fp.psis.vectors(k, n)) * fp.phis.vectors(k, n);
    EXPECT_NEAR(std::abs(s - 1.0), 0.0, 1e-8);
  }
  const auto ccr = biorthogonal_families(DeformationParams::example3(0.0), dim, 20);
  EXPECT_EQ(biorthogonality_matrix(ccr.psis, ccr.phis).defect, 0.0);

  const auto hard = biorthogonal_families(DeformationParams::example3(0.9), dim, 20);
  EXPECT_TRUE(std::isfinite(biorthogonality_matrix(hard.psis, hard.phis).defect));
}

TEST(FockFamily, BiorthogonalityImprovesWithDimension) {
  const auto p = DeformationParams::example3(0.7);
  double prev = 1e300;
  for (int d : {40, 70, 100}) {
    const FockDim dim(d, 4);
    const auto fp = biorthogonal_families(p, dim, 10);
    const double defect = biorthogonality_matrix(fp.psis, fp.phis).defect;
    EXPECT_LE(defect, std::max(prev, 1e-13)) << d;
    prev = defect;
  }
}

TEST(FockFamily, LadderResiduals) {
  const FockDim dim(100, 4);
  const auto p = DeformationParams::example3(0.5);
  const auto pr = deformation_pair(p, dim);
  const auto fp = biorthogonal_families(p, dim, 20);
  const auto rphi = ladder_check(pr.A, fp.phis);
  const auto rpsi = ladder_check(pr.B.adjoint(), fp.psis);
  EXPECT_LT(max_of(rphi), 1e-8);
  EXPECT_LT(max_of(rpsi), 1e-8);
  EXPECT_LT(rphi[0], 1e-12);

  const auto ccr = biorthogonal_families(DeformationParams::example3(0.0), dim, 20);
  EXPECT_LT(max_of(ladder_check(annihilation_matrix(dim), ccr.phis)), 1e-14);
}

TEST(FockFamily, NumberResiduals) {
  const FockDim dim(100, 4);
  for (const auto& p : {DeformationParams::example3(0.0), DeformationParams::example3(0.5)}) {
    const auto pr = deformation_pair(p, dim);
    const auto fp = biorthogonal_families(p, dim, 20);
    EXPECT_LT(max_of(number_residuals(pr.A, pr.B, fp.phis)), 1e-7) << p.label();
    EXPECT_LT(max_of(number_residuals(pr.A, pr.B, fp.psis)), 1e-7) << p.label();
  }
  // Example 4 needs a large dimension for its slowly decaying Psi vacuum.
  const FockDim big(600, 4);
  const auto p4 = DeformationParams::example4(2.0, 1.2);
  const auto pr4 = deformation_pair(p4, big);
  const auto f4 = biorthogonal_families(p4, big, 10);
  EXPECT_LT(max_of(number_residuals(pr4.A, pr4.B, f4.phis)), 1e-7);
  EXPECT_LT(max_of(number_residuals(pr4.A, pr4.B, f4.psis)), 1e-7);
}

TEST(FockFamily, OddLevelsVanish) {
  const FockDim dim(100, 4);
  for (const auto& p : {DeformationParams::example3(0.5), DeformationParams::example3b(0.4),
                        DeformationParams::example4(2.0, 1.2)}) {
    const auto fp = biorthogonal_families(p, dim, 10);
    for (int n = 0; n <= 10; ++n) {
      // vector n lives on levels of parity n
      double wrong = 0.0;
      for (Index r = (n % 2 == 0) ? 1 : 0; r < fp.phis.vectors.rows(); r += 2)
        wrong = std::max({wrong, std::abs(fp.phis.vectors(r, n)), std::abs(fp.psis.vectors(r, n))});
      EXPECT_EQ(wrong, 0.0) << p.label() << " n=" << n;
    }
  }
}

TEST(FockFamily, DualityMapSwapsFamilies) {
  const FockDim dim(100, 4);
  const auto p = DeformationParams::example3(0.4);
  const auto fp = biorthogonal_families(p, dim, 12);
  const auto fd = biorthogonal_families(p.dual(), dim, 12);
  for (int n = 0; n <= 12; ++n) {
    EXPECT_LT(oracle::phase_distance(fd.phis[n].normalized(), fp.psis[n].normalized()), 1e-10) << n;
    EXPECT_LT(oracle::phase_distance(fd.psis[n].normalized(), fp.phis[n].normalized()), 1e-10) << n;
  }
}

TEST(FockFamily, HeadKeepsMetadata) {
  const FockDim dim(60, 4);
  const auto fp = biorthogonal_families(DeformationParams::example3(0.2), dim, 12);
  const auto h = fp.phis.head(5);
  EXPECT_EQ(h.nmax(), 4);
  EXPECT_EQ(h.kind, FamilyKind::phi);
  EXPECT_EQ(h.tail_mass.size(), 5u);
  EXPECT_EQ(h.vectors, fp.phis.vectors.leftCols(5));
}
