#include "pbfock/position_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pbfock/fock_family.hpp"

namespace pbfock {

Eigen::VectorXd uniform_grid(double a, double b, int n) {
  if (n < 2 || !(b > a)) throw ConfigError("uniform_grid: need n >= 2 and b > a");
  return Eigen::VectorXd::LinSpaced(n, a, b);
}

GridFunction state_on_grid(const VectorXc& coeffs, const Eigen::VectorXd& xs) {
  for (Index i = 1; i < xs.size(); ++i)
    if (!(xs(i) > xs(i - 1))) throw ConfigError("state_on_grid: points must be strictly increasing");
  GridFunction f;
  f.xs = xs;
  const Eigen::MatrixXd h = hermite_functions(static_cast<int>(coeffs.size()) - 1, xs);
  f.values = h.transpose().cast<Complex>() * coeffs;
  return f;
}

GridFunction state_on_gauss_hermite(const VectorXc& coeffs, int nodes) {
  const QuadratureRule q = gauss_hermite(nodes);
  GridFunction f = state_on_grid(coeffs, q.nodes);
  f.quadrature = GridQuadrature::gauss_hermite;
  f.weights = q.weights;
  return f;
}

Complex grid_inner(const GridFunction& f, const GridFunction& g) {
  if (f.quadrature != GridQuadrature::gauss_hermite || f.xs.size() != g.xs.size())
    throw ConfigError("grid_inner: needs two functions on the same Gauss-Hermite grid");
  Complex s(0.0);
  for (Index i = 0; i < f.xs.size(); ++i) s += f.weights(i) * std::conj(f.values(i)) * g.values(i);
  return s;
}

ExponentFit gaussian_exponent_fit(const GridFunction& f, double window, double rel_floor) {
  const double fmax = f.values.cwiseAbs().maxCoeff();
  std::vector<double> X, Y;
  for (Index i = 0; i < f.xs.size(); ++i) {
    const double x = f.xs(i);
    if (std::abs(x) > window) continue;
    const Complex v = f.values(i);
    if (std::abs(v) < rel_floor * fmax) continue;
    if (std::abs(v.imag()) > 1e-10 * fmax || v.real() <= 0.0)
      throw FitError("gaussian_exponent_fit: function is not real and positive on the window");
    X.push_back(x * x);
    Y.push_back(-2.0 * std::log(v.real()));
  }
  if (X.size() < 3) throw FitError("gaussian_exponent_fit: fewer than three usable points");
  const Index n = static_cast<Index>(X.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = X[i];
    b(i) = Y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  ExponentFit fit;
  fit.omega = c(1);
  fit.residual = std::sqrt((b - a * c).squaredNorm() / static_cast<double>(n));
  fit.points = static_cast<int>(n);
  if (fit.residual > 1e-6) {
    std::ostringstream os;
    os << "gaussian_exponent_fit: residual " << fit.residual << " exceeds 1e-6; not a Gaussian";
    throw FitError(os.str());
  }
  return fit;
}

double peak_location(const GridFunction& f) {
  const Eigen::VectorXd mag = f.values.cwiseAbs();
  const double m = mag.maxCoeff();
  std::vector<double> X, Y;
  for (Index i = 0; i < f.xs.size(); ++i)
    if (mag(i) >= 1e-3 * m) {
      X.push_back(f.xs(i));
      Y.push_back(std::log(mag(i)));
    }
  if (X.size() < 3) throw FitError("peak_location: fewer than three points near the peak");
  const Index n = static_cast<Index>(X.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = X[i];
    a(i, 2) = X[i] * X[i];
    b(i) = Y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return -c(1) / (2.0 * c(2));
}

double odd_part(const VectorXc& coeffs, const Eigen::VectorXd& xs) {
  const Eigen::MatrixXd hp = hermite_functions(static_cast<int>(coeffs.size()) - 1, xs);
  const Eigen::MatrixXd hm = hermite_functions(static_cast<int>(coeffs.size()) - 1, -xs);
  const VectorXc fp = hp.transpose().cast<Complex>() * coeffs;
  const VectorXc fm = hm.transpose().cast<Complex>() * coeffs;
  return (fp - fm).cwiseAbs().maxCoeff() / fp.cwiseAbs().maxCoeff();
}

Exponents vacuum_exponents(const DeformationParams& p) {
  return {(p.alpha + p.beta) / (p.alpha - p.beta), (p.delta + p.gamma) / (p.delta - p.gamma)};
}

Exponents family_exponents(const DeformationParams& p) {
  const double s = p.s, a2 = p.alpha * p.alpha, mu = p.mu;
  switch (p.family) {
    case Family::harmonic: return {1.0, 1.0};
    case Family::example3: return {(1 + s) / (1 - s), (1 + s + s * s) / (1 - s + s * s)};
    case Family::example3b: return {(1 + s) / (1 - s), (1 - s - s * s) / (1 + s - s * s)};
    case Family::example4:
      return {(mu + 1) / (mu - 1), (a2 + mu * (a2 - 1)) / (a2 - mu * (a2 - 1))};
    case Family::custom: break;
  }
  return vacuum_exponents(p);
}

VectorXc position_vacuum(const DeformationParams& p, bool psi, double mass_tol) {
  validate(p);
  const auto adm = admissible(p);
  if (!adm.ok) throw AdmissibilityError(adm.reason);
  const double lead = psi ? p.delta : p.alpha;
  const double sub = psi ? p.gamma : p.beta;
  const int levels = squeezed_levels_for(std::abs(sub / lead), mass_tol);
  VectorXc v = squeezed_series<Complex>(lead, sub, levels + 1);
  v.normalize();
  return v;
}

ExponentComparison compare_exponents(const DeformationParams& p, double window, int grid_points) {
  const Eigen::VectorXd xs = uniform_grid(-window, window, grid_points);
  ExponentComparison c;
  c.expected = family_exponents(p);
  const VectorXc v_phi = position_vacuum(p, false);
  const VectorXc v_psi = position_vacuum(p, true);
  c.fitted.phi = gaussian_exponent_fit(state_on_grid(v_phi, xs), window).omega;
  c.fitted.psi = gaussian_exponent_fit(state_on_grid(v_psi, xs), window).omega;
  c.phi_error = std::abs(c.fitted.phi - c.expected.phi);
  c.psi_error = std::abs(c.fitted.psi - c.expected.psi);
  c.parity = std::max(odd_part(v_phi, xs), odd_part(v_psi, xs));
  return c;
}

std::vector<Example1Row> example1_divergence(const std::vector<double>& Ls) {
  const QuadratureRule q = gauss_legendre(20);
  std::vector<Example1Row> rows;
  for (double L : Ls) {
    if (!(L > 0.0)) throw ConfigError("example1_divergence: L must be positive");
    const long panels = 2 * std::max<long>(1, static_cast<long>(std::ceil(L)));
    const double hw = L / static_cast<double>(panels);
    Example1Row r;
    r.L = L;
    for (long k = 0; k < panels; ++k) {
      const double mid = -L + (2 * k + 1) * hw;
      for (Index i = 0; i < q.nodes.size(); ++i) {
        const double x = mid + hw * q.nodes(i);
        const double w = hw * q.weights(i);
        r.integral += w * x * x / (1.0 + x * x);
        r.measure += w / (1.0 + x * x);
      }
    }
    r.reference = 2.0 * L - 2.0 * std::atan(L);
    rows.push_back(r);
  }
  return rows;
}

void write_grid_csv(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write grid file '" + path + "'");
  const bool complex = f.values.size() > 0 && f.values.imag().cwiseAbs().maxCoeff() > 0.0;
  out << (complex ? "x,value,imag\n" : "x,value\n");
  char buf[96];
  for (Index i = 0; i < f.xs.size(); ++i) {
    if (complex)
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.xs(i), f.values(i).real(), f.values(i).imag());
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.xs(i), f.values(i).real());
    out << buf;
  }
  if (!out) throw Error("write failed for grid file '" + path + "'");
}

}  // namespace pbfock
