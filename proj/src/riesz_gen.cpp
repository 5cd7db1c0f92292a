#include "pbfock/riesz_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "pbfock/fock_core.hpp"

namespace pbfock {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::from_params: return "from_params";
    case Provenance::from_riesz: return "from_riesz";
    case Provenance::from_T: return "from_T";
  }
  return "from_params";
}

RieszSource make_riesz_source(MatrixXc R, int guard, double floor) {
  if (R.rows() != R.cols() || R.rows() < 2) throw ConfigError("Riesz source must be square with size >= 2");
  Eigen::BDCSVD<MatrixXc> svd(R);
  const double smin = svd.singularValues()(R.rows() - 1);
  if (!(smin > floor)) {
    std::ostringstream os;
    os << "Riesz source: smallest singular value " << smin << " not above " << floor;
    throw IllConditioned(os.str());
  }
  RieszSource src;
  src.dim = FockDim(static_cast<int>(R.rows()) - 1, guard);
  src.R = std::move(R);
  return src;
}

MatrixXc haar_unitary(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXc z(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<MatrixXc> qr(z);
  MatrixXc q = qr.householderQ() * MatrixXc::Identity(n, n);
  const MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

RieszSource random_riesz_source(int levels, double cond, std::uint64_t seed, int guard) {
  if (!(cond >= 1.0)) throw ConfigError("random_riesz_source: condition target must be >= 1");
  const Index n = levels + 1;
  Eigen::VectorXd sigma(n);
  for (Index k = 0; k < n; ++k) sigma(k) = std::pow(cond, -static_cast<double>(k) / static_cast<double>(n - 1));
  const MatrixXc u = haar_unitary(n, seed);
  const MatrixXc v = haar_unitary(n, seed ^ 0x9e3779b97f4a7c15ULL);
  return make_riesz_source(u * sigma.asDiagonal() * v.adjoint(), guard);
}

RieszSource diagonal_riesz_source(int levels, int guard) {
  const Index n = levels + 1;
  Eigen::VectorXcd d(n);
  for (Index k = 0; k < n; ++k) d(k) = 1.0 / static_cast<double>(k + 1);
  return make_riesz_source(MatrixXc(d.asDiagonal()), guard);
}

namespace {

MatrixXc checked_power(const MatrixXc& s, double p) {
  try {
    return hermitian_power(s, p);
  } catch (const NotPositiveDefinite& e) {
    throw IllConditioned(std::string("frame operator square root: ") + e.what());
  }
}

FockFamily plain_family(const MatrixXc& v, FamilyKind kind, const FockDim& dim) {
  FockFamily f;
  f.vectors = v;
  f.kind = kind;
  f.dim = dim;
  f.tail_mass.assign(v.cols(), 0.0);
  return f;
}

double family_commutator(const MatrixXc& x, const MatrixXc& y, const MatrixXc& R,
                         const Eigen::PartialPivLU<MatrixXc>& lu, const FockDim& dim) {
  const MatrixXc c = lu.solve((x * y - y * x) * R) - MatrixXc::Identity(R.rows(), R.cols());
  const Index g = dim.guarded();
  return spectral_norm(c.topLeftCorner(g, g));
}

}  // namespace

PseudoBosonSystem from_riesz_basis(const RieszSource& src) {
  const MatrixXc& R = src.R;
  const MatrixXc S = R * R.adjoint();
  const MatrixXc half = checked_power(S, 0.5);
  const MatrixXc half_inv = checked_power(S, -0.5);
  const MatrixXc hat = half_inv * R;
  const MatrixXc c = annihilation_matrix(src.dim);
  PseudoBosonSystem sys;
  sys.A = half * (hat * c * hat.adjoint()) * half_inv;
  sys.B = half * (hat * c.adjoint() * hat.adjoint()) * half_inv;
  sys.S = S;
  sys.provenance = Provenance::from_riesz;
  sys.dim = src.dim;
  sys.phis = plain_family(R, FamilyKind::phi, src.dim);
  sys.psis = plain_family(R.adjoint().partialPivLu().solve(MatrixXc::Identity(R.rows(), R.cols())),
                          FamilyKind::psi, src.dim);
  return sys;
}

RieszItemChecks riesz_item_checks(const PseudoBosonSystem& sys, const RieszSource& src) {
  RieszItemChecks r;
  const MatrixXc& phi = sys.phis.vectors;
  const MatrixXc& psi = sys.psis.vectors;
  const Index n = phi.cols();
  const MatrixXc Ad = sys.A.adjoint();
  const MatrixXc Bd = sys.B.adjoint();

  r.vacuum = (sys.A * phi.col(0)).norm();
  r.psi_vacuum = (Bd * psi.col(0)).norm();
  VectorXc power = phi.col(0);
  for (Index k = 0; k + 2 < n; ++k) {
    const double s = std::sqrt(static_cast<double>(k + 1));
    r.raising_step = std::max(r.raising_step, (sys.B * phi.col(k) - s * phi.col(k + 1)).norm());
    r.psi_step = std::max(r.psi_step, (Ad * psi.col(k) - s * psi.col(k + 1)).norm());
    power = sys.B * power / s;
    r.raising_power = std::max(r.raising_power, (power - phi.col(k + 1)).norm());
  }
  r.biorthogonality = max_abs(psi.adjoint() * phi - MatrixXc::Identity(n, n));

  const GramMatrix g = gram(sys.phis);
  r.riesz_lower = g.eig_min;
  r.riesz_upper = g.eig_max;
  Eigen::BDCSVD<MatrixXc> svd(src.R);
  const auto& sv = svd.singularValues();
  const double smax2 = sv(0) * sv(0), smin2 = sv(n - 1) * sv(n - 1);
  r.riesz_consistency = std::max(std::abs(g.eig_min - smin2) / smin2, std::abs(g.eig_max - smax2) / smax2);
  r.condition = sv(0) / sv(n - 1);

  const Eigen::PartialPivLU<MatrixXc> lu(src.R);
  r.commutator = family_commutator(sys.A, sys.B, src.R, lu, sys.dim);
  r.ccr_defect = family_commutator(sys.A, Ad, src.R, lu, sys.dim);
  return r;
}

InverseConstruction inverse_construction(const MatrixXc& T, const MatrixXc& A, const FockFamily& phis,
                                         double tol, int check_block, double cond_ceiling) {
  if (T.rows() != T.cols() || T.rows() != A.rows() || A.rows() != A.cols() || phis.vectors.rows() != T.rows())
    throw ConfigError("inverse_construction: shape mismatch");
  if (check_block < 1 || check_block > T.rows()) throw ConfigError("inverse_construction: invalid check block");
  if (max_abs(T - T.adjoint()) > 1e-12 * std::max(1.0, max_abs(T)))
    throw ConfigError("inverse_construction: T is not Hermitian");
  const HermitianSpectrum sp = hermitian_eigen(T);
  const double lmin = sp.values(0), lmax = sp.values(sp.values.size() - 1);
  if (!(lmin > 0.0)) throw NotPositiveDefinite("inverse_construction: T is not positive definite");
  if (lmax / lmin > cond_ceiling) {
    std::ostringstream os;
    os << "inverse_construction: condition " << lmax / lmin << " above ceiling " << cond_ceiling;
    throw IllConditioned(os.str());
  }
  const MatrixXc Tinv = T.llt().solve(MatrixXc::Identity(T.rows(), T.cols()));
  InverseConstruction out;
  PseudoBosonSystem& sys = out.system;
  sys.A = A;
  sys.B = T * A.adjoint() * Tinv;
  const MatrixXc comm = A * sys.B - sys.B * A - MatrixXc::Identity(A.rows(), A.cols());
  out.commutator = spectral_norm(comm.topLeftCorner(check_block, check_block));
  if (out.commutator >= tol) {
    std::ostringstream os;
    os << "[a, b_T] - 1 has norm " << out.commutator << " on the leading " << check_block
       << " block; T is incompatible with a";
    throw NotCanonical(os.str());
  }
  sys.S = T;
  sys.provenance = Provenance::from_T;
  sys.dim = phis.dim;
  sys.phis = phis;
  sys.psis = phis;
  sys.psis.vectors = Tinv * phis.vectors;
  sys.psis.kind = FamilyKind::psi;
  return out;
}

NormBounds norm_bound_check(const PseudoBosonSystem& sys) {
  NormBounds nb;
  nb.max_phi_norm = sys.phis.vectors.colwise().norm().maxCoeff();
  nb.max_psi_norm = sys.psis.vectors.colwise().norm().maxCoeff();
  MatrixXc t_half_inv;
  if (sys.provenance == Provenance::from_params) {
    const GramMatrix g = gram(sys.phis);
    nb.bound_phi = std::sqrt(g.eig_max);
    nb.bound_psi = 1.0 / std::sqrt(g.eig_min);
    t_half_inv = frame_roots(sys.phis).half_inv;
  } else {
    const HermitianSpectrum sp = hermitian_eigen(sys.S);
    nb.bound_phi = std::sqrt(sp.values(sp.values.size() - 1));
    nb.bound_psi = 1.0 / std::sqrt(sp.values(0));
    t_half_inv = checked_power(sys.S, -0.5);
  }
  const Eigen::RowVectorXd norms = (t_half_inv * sys.phis.vectors).colwise().norm();
  nb.unit_defect = (norms.array() - 1.0).abs().maxCoeff();
  return nb;
}

std::vector<CounterexampleRow> unbounded_metric_demo(CounterexampleKind kind, const std::vector<int>& Ms) {
  std::vector<CounterexampleRow> rows;
  int last = 0;
  for (int M : Ms) {
    if (M <= last) throw ConfigError("unbounded_metric_demo: M sequence must be increasing and positive");
    last = M;
    // phi_n = e_n / sqrt(m_n), Psi_n = sqrt(m_n) e_n, n = 1..M, with m_n the metric eigenvalue.
    Eigen::VectorXd m(M), r(M);
    for (int n = 1; n <= M; ++n) {
      const double nd = n;
      if (kind == CounterexampleKind::single) m(n - 1) = nd;
      else m(n - 1) = (n % 2 == 0) ? nd * nd : 1.0 / (nd * nd);
      r(n - 1) = std::sqrt(m(n - 1));
    }
    CounterexampleRow row;
    row.M = M;
    row.metric_norm = m.maxCoeff();
    row.inverse_norm = m.cwiseInverse().maxCoeff();
    // <Psi_n, phi_k> = delta_nk r_n / r_n.
    double defect = 0.0;
    for (int n = 0; n < M; ++n) defect = std::max(defect, std::abs(r(n) / r(n) - 1.0));
    row.biorthogonality = defect;
    rows.push_back(row);
  }
  return rows;
}

PowerFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("log_log_fit: need at least two points");
  const Index n = static_cast<Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = std::log(x[i]);
    b(i) = std::log(y[i]);
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd res = b - a * c;
  const double ss_tot = (b.array() - b.mean()).square().sum();
  PowerFit f;
  f.exponent = c(1);
  f.r_squared = ss_tot > 0.0 ? 1.0 - res.squaredNorm() / ss_tot : 1.0;
  return f;
}

MatrixXc read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file '" + path + "'");
  long n = 0;
  if (!(in >> n) || n < 1) throw ConfigError("matrix file '" + path + "': bad dimension line");
  MatrixXc m(n, n);
  std::string tok;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (!(in >> tok)) throw ConfigError("matrix file '" + path + "': too few entries");
      const auto comma = tok.find(',');
      try {
        const double re = std::stod(tok.substr(0, comma));
        const double im = comma == std::string::npos ? 0.0 : std::stod(tok.substr(comma + 1));
        m(i, j) = Complex(re, im);
      } catch (const std::exception&) {
        throw ConfigError("matrix file '" + path + "': bad entry '" + tok + "'");
      }
    }
  if (in >> tok) throw ConfigError("matrix file '" + path + "': trailing data");
  return m;
}

void write_matrix(const std::string& path, const MatrixXc& m) {
  if (m.rows() != m.cols()) throw ConfigError("write_matrix: matrix must be square");
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file '" + path + "'");
  out << m.rows() << '\n';
  char buf[64];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(i, j).real(), m(i, j).imag());
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw Error("write failed for matrix file '" + path + "'");
}

}  // namespace pbfock
