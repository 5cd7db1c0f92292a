#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "pbfock/fock_core.hpp"

using namespace pbfock;

TEST(FockCore, AnnihilationSmall) {
  const MatrixXc c2 = annihilation_matrix(FockDim(2, 0));
  MatrixXc expected = MatrixXc::Zero(3, 3);
  expected(0, 1) = 1.0;
  expected(1, 2) = std::sqrt(2.0);
  EXPECT_EQ(c2, expected);

  const MatrixXc c1 = annihilation_matrix(FockDim(1, 0));
  MatrixXc e1 = MatrixXc::Zero(2, 2);
  e1(0, 1) = 1.0;
  EXPECT_EQ(c1, e1);
}

TEST(FockCore, CreationIsAdjoint) {
  for (int d = 1; d <= 64; ++d) {
    const FockDim dim(d, 0);
    EXPECT_EQ(creation_matrix(dim), MatrixXc(annihilation_matrix(dim).adjoint()));
  }
  const MatrixXc cd = creation_matrix(FockDim(2, 0));
  EXPECT_DOUBLE_EQ(cd(1, 0).real(), 1.0);
  EXPECT_DOUBLE_EQ(cd(2, 1).real(), std::sqrt(2.0));
}

TEST(FockCore, NumberOperatorAndTruncatedCommutator) {
  const FockDim dim(7, 0);
  const MatrixXc c = annihilation_matrix(dim), cd = creation_matrix(dim);
  const MatrixXc n = cd * c;
  for (Index i = 0; i < n.rows(); ++i)
    for (Index j = 0; j < n.cols(); ++j)
      EXPECT_NEAR(std::abs(n(i, j) - (i == j ? Complex(double(i)) : Complex(0.0))), 0.0, 1e-14);
  const MatrixXc comm = c * cd - cd * c;
  EXPECT_NEAR(comm(7, 7).real(), -7.0, 1e-13);
}

TEST(FockCore, DeformationPairs) {
  const FockDim dim(10, 2);
  const MatrixXc c = annihilation_matrix(dim), cd = creation_matrix(dim);

  auto p3 = deformation_pair(DeformationParams::example3(0.5), dim);
  EXPECT_LT((p3.A - (c + 0.5 * cd)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((p3.B - (0.5 * c + 1.25 * cd)).cwiseAbs().maxCoeff(), 1e-15);

  auto p0 = deformation_pair(DeformationParams::example3(0.0), dim);
  EXPECT_EQ(p0.A, c);
  EXPECT_EQ(p0.B, cd);

  auto p4 = deformation_pair(DeformationParams::example4(2.0, 1.2), dim);
  EXPECT_LT((p4.B - (1.8 * c + 2.0 * cd)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((p4.A - (2.0 * c + (2.0 / 1.2) * cd)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(FockCore, RejectsNonCanonicalPairs) {
  EXPECT_THROW(deformation_pair(DeformationParams::custom(1.0, 0.5, 0.5, 1.0), FockDim(4, 1)), NotCanonical);
  EXPECT_THROW(validate(DeformationParams::custom(0.0, 1.0, -1.0, 0.0)), ConfigError);
  EXPECT_NO_THROW(validate(DeformationParams::custom(2.0, 1.0, 1.0, 1.0)));
  EXPECT_THROW(family_from_string("example5"), ConfigError);
  EXPECT_THROW(FockDim(4, 4), ConfigError);
  EXPECT_THROW(FockDim(0, 0), ConfigError);
}

TEST(FockCore, CommutatorDefectExamples) {
  const FockDim g1(4, 1), g0(4, 0);
  const MatrixXc c = annihilation_matrix(g1), cd = creation_matrix(g1);
  const auto d1 = commutator_defect(c, cd, g1);
  EXPECT_LT(d1.guarded, 4 * std::numeric_limits<double>::epsilon() * 4);
  EXPECT_TRUE(d1.reliable);
  const auto d0 = commutator_defect(c, cd, g0);
  EXPECT_FALSE(d0.reliable);
  // Dense product: bottom diagonal entry of [c, c^dagger] - 1 is -D - 1.
  EXPECT_NEAR(d0.full, 5.0, 1e-13);
  EXPECT_NEAR(d0.guarded, 5.0, 1e-13);

  const FockDim d64(64, 2);
  auto p = deformation_pair(DeformationParams::example3(0.5), d64);
  EXPECT_LT(commutator_defect(p.A, p.B, d64).guarded, 1e-13);
}

TEST(FockCore, CommutatorDefectMatchesElementwiseOracle) {
  const FockDim dim(12, 2);
  auto p = deformation_pair(DeformationParams::example3(0.3), dim);
  MatrixXc dense = MatrixXc::Zero(13, 13);
  for (Index i = 0; i < 13; ++i)
    for (Index j = 0; j < 13; ++j) {
      Complex s = 0.0;
      for (Index k = 0; k < 13; ++k) s += p.A(i, k) * p.B(k, j) - p.B(i, k) * p.A(k, j);
      dense(i, j) = s - (i == j ? 1.0 : 0.0);
    }
  EXPECT_LT(dense.topLeftCorner(11, 11).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(commutator_defect(p.A, p.B, FockDim(12, 0)).full, spectral_norm(dense), 1e-12);
}

TEST(FockCore, GuardedCommutatorPropertyOverAdmissibleParams) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 20 + 20 * trial;
    const FockDim dim(std::min(d, 256), 2);
    const double s = u(rng);
    for (const auto& p : {DeformationParams::example3(s), DeformationParams::example3b(0.6 * s),
                          DeformationParams::example4(1.5 + std::abs(s), 1.05)}) {
      auto pr = deformation_pair(p, dim);
      EXPECT_LT(commutator_defect(pr.A, pr.B, dim).guarded, 1e-12) << p.label() << " D=" << dim.levels;
    }
  }
}

TEST(FockCore, AdjointConsistencyAndBandwidth) {
  const FockDim dim(30, 2);
  const auto p = DeformationParams::example4(2.0, 1.2);
  auto pr = deformation_pair(p, dim);
  const MatrixXc c = annihilation_matrix(dim), cd = creation_matrix(dim);
  EXPECT_LT((MatrixXc(pr.A.adjoint()) - (p.alpha * cd + p.beta * c)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(bandwidth(pr.A), 1);
  EXPECT_EQ(bandwidth(pr.B), 1);
  EXPECT_EQ(bandwidth(MatrixXc(pr.A.adjoint())), 1);
  EXPECT_EQ(bandwidth(MatrixXc(pr.B.adjoint())), 1);
}

TEST(FockCore, TemplatedOnScalar) {
  const FockDim dim(6, 1);
  const auto c = annihilation_matrix<double>(dim);
  const auto cl = annihilation_matrix<std::complex<long double>>(dim);
  EXPECT_DOUBLE_EQ(c(2, 3), std::sqrt(3.0));
  EXPECT_NEAR(static_cast<double>(std::abs(cl(5, 6) - std::sqrt(6.0L))), 0.0, 1e-18);
  const auto m = bogoliubov_matrix<double>(1.0, 0.25, dim);
  EXPECT_EQ(commutator_defect(m, bogoliubov_matrix<double>(0.25, 1.0625, dim), dim).reliable, true);
  EXPECT_LT(commutator_defect(m, bogoliubov_matrix<double>(0.25, 1.0625, dim), dim).guarded, 1e-14);
}

TEST(FockCore, DualParamsSwapRoles) {
  const auto p = DeformationParams::example3(0.4);
  const auto d = p.dual();
  EXPECT_DOUBLE_EQ(d.alpha, p.delta);
  EXPECT_DOUBLE_EQ(d.beta, p.gamma);
  EXPECT_DOUBLE_EQ(d.gamma, p.beta);
  EXPECT_DOUBLE_EQ(d.delta, p.alpha);
  EXPECT_LT(d.symplectic_defect(), 1e-15);
}
