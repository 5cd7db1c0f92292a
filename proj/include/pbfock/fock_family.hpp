#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pbfock/fock_core.hpp"

namespace pbfock {

enum class Normalization { unit_norm, pairing_normalized };
enum class FamilyKind { phi, psi, hatted };

std::string to_string(FamilyKind k);

struct Vacuum {
  VectorXc coeffs;
  double tail_mass = 0.0;  // relative squared mass of the exact series beyond level D
  Normalization normalization = Normalization::unit_norm;
};

struct FockFamily {
  MatrixXc vectors;  // column n is the n-th family vector
  FamilyKind kind = FamilyKind::phi;
  std::optional<DeformationParams> params;
  FockDim dim;
  std::vector<double> tail_mass;

  int nmax() const { return static_cast<int>(vectors.cols()) - 1; }
  auto operator[](Index n) const { return vectors.col(n); }
  // First count vectors as a new family.
  FockFamily head(int count) const;
};

struct Admissibility {
  bool ok = false;
  double margin = 0.0;
  std::string reason;
};

Admissibility admissible(const DeformationParams& p);

// Null vector of lead*c + sub*c^dagger on levels 0..size-1, with coefficient 1 on level 0.
// Only even levels are populated: f_{n+1} = -(sub/lead) sqrt(n/(n+1)) f_{n-1}.
template <class Scalar = Complex>
Vector<Scalar> squeezed_series(Scalar lead, Scalar sub, Index size) {
  Vector<Scalar> f = Vector<Scalar>::Zero(size);
  if (size == 0) return f;
  f(0) = Scalar(1);
  const Scalar ratio = -sub / lead;
  using std::sqrt;
  for (Index n = 1; n + 1 < size; n += 2)
    f(n + 1) = ratio * Scalar(sqrt(static_cast<double>(n) / static_cast<double>(n + 1))) * f(n - 1);
  return f;
}

// Relative squared mass beyond level `levels` of the infinite series above, |sub/lead| < 1.
double squeezed_tail_mass(double ratio_abs, int levels);

// Levels needed for the squeezed series tail mass to fall below mass_tol.
int squeezed_levels_for(double ratio_abs, double mass_tol);

Vacuum vacuum_phi(const DeformationParams& p, const FockDim& dim, double tol);
Vacuum vacuum_psi(const DeformationParams& p, const FockDim& dim, double tol, const Vacuum& phi0);

// vectors[n] = raiser vectors[n-1] / sqrt(n); tail mass measured on the guard levels.
FockFamily build_family(const Vacuum& vac, const MatrixXc& raiser, int nmax, const FockDim& dim,
                        FamilyKind kind, double tol);

// Solves lowering v_n = sqrt(n) v_{n-1} level by level. The level-0 component of v_n, which the
// lowering relation leaves free, is taken from (raiser v_{n-1})_0 / sqrt(n).
// lowering must be tridiagonal with a nonvanishing superdiagonal.
template <class Scalar>
Matrix<Scalar> ladder_substitution(const Vector<Scalar>& vac, const Matrix<Scalar>& lowering,
                                   const Matrix<Scalar>& raiser, int nmax) {
  const Index w = vac.size();
  Matrix<Scalar> out(w, nmax + 1);
  out.col(0) = vac;
  using std::sqrt;
  for (int n = 1; n <= nmax; ++n) {
    const Scalar sn = Scalar(sqrt(static_cast<double>(n)));
    auto prev = out.col(n - 1);
    auto v = out.col(n);
    v.setZero();
    v(0) = (raiser.row(0) * prev).value() / sn;
    for (Index k = 0; k + 1 < w; ++k) {
      Scalar rhs = sn * prev(k) - lowering(k, k) * v(k);
      if (k > 0) rhs -= lowering(k, k - 1) * v(k - 1);
      v(k + 1) = rhs / lowering(k, k + 1);
    }
  }
  return out;
}

struct FamilyPair {
  Vacuum phi0;
  Vacuum psi0;
  FockFamily phis;
  FockFamily psis;
};

// Biorthogonal families of a deformation, built in an extended working space and truncated to D.
// Tail masses are recorded, not enforced.
FamilyPair biorthogonal_families(const DeformationParams& p, const FockDim& dim, int nmax);

int working_levels(const FockDim& dim);

struct Biorthogonality {
  MatrixXc matrix;  // (n, m) = <Psi_n, phi_m>
  double defect = 0.0;
};

Biorthogonality biorthogonality_matrix(const FockFamily& psis, const FockFamily& phis);

// residual[n] = || (lowering v_n - sqrt(n) v_{n-1}) || on the guarded rows.
std::vector<double> ladder_check(const MatrixXc& lowering, const FockFamily& fam);

// residual[n] = || (N v_n - n v_n) || on the guarded rows with N = BA (phi) or A^dagger B^dagger (psi).
std::vector<double> number_residuals(const MatrixXc& A, const MatrixXc& B, const FockFamily& fam);

double max_of(const std::vector<double>& v);

}  // namespace pbfock
