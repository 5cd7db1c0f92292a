#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbfock/metric_frames.hpp"

namespace pbfock {

struct RieszSource {
  MatrixXc R;  // column n is phi_n in the standard basis
  FockDim dim;
};

// Validates square shape and smallest singular value above floor.
RieszSource make_riesz_source(MatrixXc R, int guard = 2, double floor = 1e-10);

// U diag(sigma) V^dagger with sigma log-spaced from 1 to 1/cond and seeded Haar unitaries U, V.
RieszSource random_riesz_source(int levels, double cond, std::uint64_t seed, int guard = 2);

// diag(1, 1/2, ..., 1/(D+1)).
RieszSource diagonal_riesz_source(int levels, int guard = 2);

// Haar-distributed unitary from the QR factorization of a complex Gaussian matrix.
MatrixXc haar_unitary(Index n, std::uint64_t seed);

enum class Provenance { from_params, from_riesz, from_T };
std::string to_string(Provenance p);

struct PseudoBosonSystem {
  MatrixXc A;
  MatrixXc B;
  FockFamily phis;
  FockFamily psis;
  MatrixXc S;
  Provenance provenance = Provenance::from_params;
  FockDim dim;
};

// a = S^{1/2} (hat c hat^dagger) S^{-1/2}, b = S^{1/2} (hat c^dagger hat^dagger) S^{-1/2}
// with S = R R^dagger and hat = S^{-1/2} R. Throws IllConditioned on the square-root floor.
PseudoBosonSystem from_riesz_basis(const RieszSource& src);

struct RieszItemChecks {
  double vacuum = 0.0;          // || a phi_0 ||
  double raising_step = 0.0;    // max_n || b phi_n - sqrt(n+1) phi_{n+1} ||, n <= D-2
  double raising_power = 0.0;   // max_n || b^n phi_0 / sqrt(n!) - phi_n || (rounding diagnostic)
  double psi_vacuum = 0.0;      // || b^dagger Psi_0 ||
  double psi_step = 0.0;        // max_n || a^dagger Psi_n - sqrt(n+1) Psi_{n+1} ||, n <= D-2
  double biorthogonality = 0.0; // max |<Psi_n, phi_m> - delta_nm|
  double riesz_lower = 0.0;     // Gram eig_min
  double riesz_upper = 0.0;     // Gram eig_max
  double riesz_consistency = 0.0;  // relative mismatch of Gram extremes and sigma(R)^2
  double commutator = 0.0;      // guarded [a, b] - I in family coordinates
  double ccr_defect = 0.0;      // guarded [a, a^dagger] - I in family coordinates
  double condition = 0.0;       // condition number of R

  double item1() const { return std::max(vacuum, raising_step); }
  double item2() const { return psi_vacuum; }
  double item3() const { return std::max(biorthogonality, psi_step); }
  double item4() const { return riesz_consistency; }
};

RieszItemChecks riesz_item_checks(const PseudoBosonSystem& sys, const RieszSource& src);

// b_T = T A^dagger T^{-1}; Psi_n = T^{-1} phi_n. The commutator of (A, b_T) and the agreement
// are checked on the leading check_block x check_block block; throws NotCanonical when the
// commutator defect reaches tol.
struct InverseConstruction {
  PseudoBosonSystem system;
  double commutator = 0.0;
};

InverseConstruction inverse_construction(const MatrixXc& T, const MatrixXc& A, const FockFamily& phis,
                                         double tol, int check_block, double cond_ceiling = 1e12);

// max_n ||phi_n|| vs ||T^{1/2}|| and max_n ||Psi_n|| vs ||T^{-1/2}||, with T the span-restricted metric.
struct NormBounds {
  double max_phi_norm = 0.0;
  double bound_phi = 0.0;
  double max_psi_norm = 0.0;
  double bound_psi = 0.0;
  double unit_defect = 0.0;  // max_n | ||T^{-1/2} phi_n|| - 1 |
};

NormBounds norm_bound_check(const PseudoBosonSystem& sys);

enum class CounterexampleKind { single, even_odd };

struct CounterexampleRow {
  int M = 0;
  double metric_norm = 0.0;   // || eta_Psi || (single) or || M_{1->2} || (even_odd)
  double inverse_norm = 0.0;  // || eta_phi || (single) or || M_{2->1} || (even_odd)
  double biorthogonality = 0.0;
};

std::vector<CounterexampleRow> unbounded_metric_demo(CounterexampleKind kind, const std::vector<int>& Ms);

struct PowerFit {
  double exponent = 0.0;
  double r_squared = 0.0;
};

// Least-squares slope of log y against log x.
PowerFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y);

// Plain-text matrix: first line the dimension, then one row per line of "re,im" entries.
MatrixXc read_matrix(const std::string& path);
void write_matrix(const std::string& path, const MatrixXc& m);

}  // namespace pbfock
