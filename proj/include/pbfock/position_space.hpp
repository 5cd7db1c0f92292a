#pragma once

#include <string>
#include <vector>

#include "pbfock/fock_core.hpp"
#include "pbfock/quadrature.hpp"

namespace pbfock {

enum class GridQuadrature { gauss_hermite, uniform };

struct GridFunction {
  Eigen::VectorXd xs;       // strictly increasing
  VectorXc values;
  GridQuadrature quadrature = GridQuadrature::uniform;
  Eigen::VectorXd weights;  // set for gauss_hermite grids
};

Eigen::VectorXd uniform_grid(double a, double b, int n);

// sum_n coeffs_n h_n(x) on the given points.
GridFunction state_on_grid(const VectorXc& coeffs, const Eigen::VectorXd& xs);

// Same synthesis on an n-node Gauss-Hermite grid, carrying the scaled weights.
GridFunction state_on_gauss_hermite(const VectorXc& coeffs, int nodes);

// sum_j w_j conj(f_j) g_j for two functions on the same Gauss-Hermite grid.
Complex grid_inner(const GridFunction& f, const GridFunction& g);

struct ExponentFit {
  double omega = 0.0;
  double residual = 0.0;  // RMS residual of -2 log f against the fitted line
  int points = 0;
};

// Least-squares slope of -2 log f(x) against x^2 over |x| <= window and f >= rel_floor * max f.
// Throws FitError when f is not real and positive there, or the residual exceeds 1e-6.
ExponentFit gaussian_exponent_fit(const GridFunction& f, double window = 2.0, double rel_floor = 1e-6);

// Location of the maximum of |f| from a quadratic fit of log |f| near the peak.
double peak_location(const GridFunction& f);

// max_x |f(x) - f(-x)| / max |f| for the given points.
double odd_part(const VectorXc& coeffs, const Eigen::VectorXd& xs);

struct Exponents {
  double phi = 0.0;
  double psi = 0.0;
};

// Gaussian exponents of the vacua from a phi0 = 0 and b^dagger Psi0 = 0 in position space.
Exponents vacuum_exponents(const DeformationParams& p);

// Closed forms stated per named family.
Exponents family_exponents(const DeformationParams& p);

// Vacuum coefficients with the dimension chosen so the series tail mass is below mass_tol.
VectorXc position_vacuum(const DeformationParams& p, bool psi, double mass_tol = 1e-30);

struct ExponentComparison {
  Exponents fitted;
  Exponents expected;
  double phi_error = 0.0;
  double psi_error = 0.0;
  double parity = 0.0;  // larger odd part of the two vacua
};

ExponentComparison compare_exponents(const DeformationParams& p, double window = 2.0, int grid_points = 201);

struct Example1Row {
  double L = 0.0;
  double integral = 0.0;   // int_{-L}^{L} x^2/(1+x^2) dx by composite Gauss-Legendre
  double reference = 0.0;  // 2L - 2 arctan L
  double measure = 0.0;    // int_{-L}^{L} dx/(1+x^2)
};

std::vector<Example1Row> example1_divergence(const std::vector<double>& Ls);

// Two-column CSV: x, value (real part; an imaginary column is added when any sample is complex).
void write_grid_csv(const std::string& path, const GridFunction& f);

}  // namespace pbfock
