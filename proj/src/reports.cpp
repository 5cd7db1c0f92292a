#include "pbfock/reports.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "pbfock/coherent.hpp"
#include "pbfock/intertwine.hpp"

namespace pbfock {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string z_label(Complex z) { return fmt(z.real()) + "," + fmt(z.imag()); }

bool finite(double v) { return std::isfinite(v); }

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    size_t used = 0;
    const std::string re_s = text.substr(0, comma);
    const double re = std::stod(re_s, &used);
    if (used != re_s.size()) throw std::invalid_argument(text);
    double im = 0.0;
    if (comma != std::string::npos) {
      const std::string im_s = text.substr(comma + 1);
      im = std::stod(im_s, &used);
      if (used != im_s.size()) throw std::invalid_argument(text);
    }
    return {re, im};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse complex value '" + text + "' (expected re,im)");
  }
}

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  const Family f = family_from_string(family);
  if (dim < 1) fail("dim must be >= 1");
  if (guard < 0 || guard >= dim) fail("guard must satisfy 0 <= guard < dim");
  if (nmax < 1 || nmax > dim - guard) fail("nmax must satisfy 1 <= nmax <= dim - guard");
  if (!(tol > 0.0) || !finite(tol)) fail("tol must be positive");
  if (!(radius > 0.0) || !finite(radius)) fail("radius must be positive");
  if (radial_nodes < 1 || angular_nodes < 0 || quad_block < 1) fail("quadrature settings must be positive");
  if (!(fit_window > 0.0)) fail("fit window must be positive");
  if (workers < 1) fail("workers must be >= 1");
  for (Complex v : z)
    if (!finite(v.real()) || !finite(v.imag())) fail("z values must be finite");
  for (double v : {s, alpha, mu, beta, gamma, delta})
    if (!finite(v)) fail("family parameters must be finite");
  if (f == Family::example4 && (alpha == 0.0 || mu == 0.0)) fail("example4 requires alpha != 0 and mu != 0");
  if (!axis.empty()) {
    static const std::vector<std::string> axes = {"s", "alpha", "mu", "dim", "nmax", "guard"};
    if (std::find(axes.begin(), axes.end(), axis) == axes.end()) fail("unknown sweep axis '" + axis + "'");
    if (values.empty()) fail("sweep requires at least one value");
    for (double v : values) {
      if (!finite(v)) fail("sweep values must be finite");
      with_axis_value(v).validate_point();
    }
  }
}

void RunConfig::validate_point() const {
  RunConfig c = *this;
  c.axis.clear();
  c.values.clear();
  c.validate();
}

DeformationParams RunConfig::params() const {
  switch (family_from_string(family)) {
    case Family::harmonic: return DeformationParams::harmonic();
    case Family::example3: return DeformationParams::example3(s);
    case Family::example3b: return DeformationParams::example3b(s);
    case Family::example4: return DeformationParams::example4(alpha, mu);
    case Family::custom: return DeformationParams::custom(alpha, beta, gamma, delta);
  }
  return DeformationParams::harmonic();
}

RunConfig RunConfig::with_axis_value(double value) const {
  RunConfig c = *this;
  auto as_int = [&](const char* what) {
    if (value != std::floor(value)) throw ConfigError(std::string(what) + " values must be integers");
    return static_cast<int>(value);
  };
  if (axis == "s") c.s = value;
  else if (axis == "alpha") c.alpha = value;
  else if (axis == "mu") c.mu = value;
  else if (axis == "dim") c.dim = as_int("dim");
  else if (axis == "nmax") c.nmax = as_int("nmax");
  else if (axis == "guard") c.guard = as_int("guard");
  else throw ConfigError("unknown sweep axis '" + axis + "'");
  return c;
}

bool RunReport::pass() const {
  if (!failures.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.asserted || c.passed(); });
}

const Check* RunReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

double RunReport::heisenberg_mean() const {
  if (heisenberg.empty()) return 0.0;
  double s = 0.0;
  for (const auto& h : heisenberg) s += h.product;
  return s / static_cast<double>(heisenberg.size());
}

namespace {

int resolution_block(int nmax) { return std::max(1, std::min(nmax - 4, 3 * nmax / 5)); }

int angular_nodes_for(const RunConfig& c, int K) {
  return c.angular_nodes > 0 ? c.angular_nodes : std::max(2 * K + 8, c.nmax + 2);
}

class Pipeline {
 public:
  Pipeline(const RunConfig& cfg, RunReport& rep) : cfg_(cfg), rep_(rep), tol_(cfg.tol) {}

  void add(const std::string& name, const std::string& module, double value, double tolerance,
           bool always_asserted = false) {
    rep_.checks.push_back({name, module, finite(value) ? value : INFINITY, tolerance,
                           always_asserted || !rep_.degraded});
  }

  template <class F>
  bool stage(const char* module, F&& fn) {
    try {
      fn();
      return true;
    } catch (const std::exception& e) {
      rep_.failures.push_back(std::string(module) + ": " + e.what());
      return false;
    }
  }

  void run() {
    DeformationParams p;
    if (!stage("fock_core", [&] {
          p = cfg_.params();
          validate(p);
        }))
      return;
    rep_.params_label = p.label();
    rep_.admissibility = admissible(p);
    if (!rep_.admissibility.ok) {
      rep_.failures.push_back("fock_family: AdmissibilityError: " + rep_.admissibility.reason);
      return;
    }
    const FockDim dim(cfg_.dim, cfg_.guard);
    const int nmax = cfg_.nmax;

    MatrixXc A, B;
    stage("fock_core", [&] {
      auto pair = deformation_pair(p, dim);
      A = std::move(pair.A);
      B = std::move(pair.B);
      add("commutator", "fock_core", commutator_defect(A, B, dim).guarded, 1e-12, true);
    });
    if (A.size() == 0) return;

    FamilyPair fams;
    if (!stage("fock_family", [&] { fams = biorthogonal_families(p, dim, nmax); })) return;
    const FockFamily& phis = fams.phis;
    const FockFamily& psis = fams.psis;
    const double tail = std::max(max_of(phis.tail_mass), max_of(psis.tail_mass));
    rep_.degraded = (1.0 - rep_.admissibility.margin > 0.6) || (4 * nmax > cfg_.dim) || tail > tol_;

    const MatrixXc Ad = A.adjoint(), Bd = B.adjoint();
    stage("fock_family", [&] {
      rep_.checks.push_back({"family_tail", "fock_family", tail, tol_, false});
      add("biorthogonality", "fock_family", biorthogonality_matrix(psis, phis).defect, tol_);
      add("ladder_phi", "fock_family", max_of(ladder_check(A, phis)), 10 * tol_);
      add("ladder_psi", "fock_family", max_of(ladder_check(Bd, psis)), 10 * tol_);
      add("number_phi", "fock_family", max_of(number_residuals(A, B, phis)), 10 * tol_);
      add("number_psi", "fock_family", max_of(number_residuals(A, B, psis)), 10 * tol_);
    });

    MatrixXc eta_phi, eta_psi;
    stage("metric_frames", [&] {
      const auto seq = default_nmax_sequence(nmax);
      const int K = resolution_block(nmax);
      const MetricReport m = metric_report(phis, psis, seq, K);
      eta_phi = m.eta_phi;
      eta_psi = m.eta_psi;
      rep_.riesz_phi = m.riesz_phi;
      rep_.riesz_psi = m.riesz_psi;
      add("inverse_pair", "metric_frames", m.inverse_defect, 10 * tol_);
      add("resolution", "metric_frames", resolution_defect(phis, psis, K), 100 * tol_);
      add("hatted_orthonormality", "metric_frames", m.hatted_orthonormality_defect, tol_);
      rep_.checks.push_back({"dual_family", "metric_frames", m.dual_defect, 10 * tol_, false});
      rep_.checks.push_back({"hatted_coincidence", "metric_frames", m.hatted_coincidence, 100 * tol_, false});
    });

    if (eta_phi.size() > 0) {
      stage("intertwine", [&] {
        const MatrixXc N = B * A;
        const MatrixXc q_psi = span_basis(psis, nmax);
        const MatrixXc q_phi = span_basis(phis, nmax);
        const MatrixXc q_phi_all = span_basis(phis);
        add("intertwining", "intertwine", intertwining_defect_ladder(B, eta_phi, Ad, q_psi, dim), 100 * tol_);
        add("intertwining_adjoint", "intertwine", intertwining_defect_adjoint(Ad, eta_psi, B, q_phi, dim),
            100 * tol_);
        add("pseudo_hermiticity", "intertwine", pseudohermiticity_defect(N, eta_psi, q_phi_all, dim), 100 * tol_);
        add("eigen_transport", "intertwine", max_of(eigen_transport(N, eta_phi, psis)), 100 * tol_);
        const Eigen::VectorXcd ev = compressed_spectrum(N, q_phi_all);
        double dev = 0.0;
        for (Index k = 0; k < ev.size(); ++k) dev = std::max(dev, std::abs(ev(k) - Complex(double(k))));
        add("number_spectrum", "intertwine", dev, 100 * tol_);
      });
    }

    stage("coherent", [&] { coherent(A, B, phis, psis, dim); });

    stage("position_space", [&] {
      rep_.exponents = compare_exponents(p, cfg_.fit_window);
      rep_.has_exponents = true;
      add("exponent_phi", "position_space", rep_.exponents.phi_error, 100 * tol_);
      add("exponent_psi", "position_space", rep_.exponents.psi_error, 100 * tol_);
      add("vacuum_parity", "position_space", rep_.exponents.parity, 100 * tol_);
    });
  }

 private:
  void coherent(const MatrixXc& A, const MatrixXc& B, const FockFamily& phis, const FockFamily& psis,
                const FockDim& dim) {
    const FrameRoots roots = frame_roots(phis);
    const FockFamily hatted = orthonormalize(phis);
    const MatrixXc a_phi = a_phi_operator(roots.half, roots.half_inv, A);
    const MatrixXc Bd = B.adjoint();
    double e_phi = 0.0, e_psi = 0.0, h_norm = 0.0, a_eig = 0.0, heis = 0.0;
    for (Complex z : cfg_.z) {
      try {
        const CoherentState sp = coherent_state(z, phis);
        const CoherentState ss = coherent_state(z, psis);
        const CoherentState sh = hatted_coherent(z, hatted);
        e_phi = std::max(e_phi, eigen_residual(A, sp, dim));
        e_psi = std::max(e_psi, eigen_residual(Bd, ss, dim));
        h_norm = std::max(h_norm, std::abs(sh.coeffs.norm() - 1.0));
        a_eig = std::max(a_eig, eigen_residual(a_phi, sh, dim));
        const Uncertainty u = heisenberg(sh, a_phi);
        rep_.heisenberg.push_back({z, u.product, u.dx, u.dp});
        heis = std::max(heis, std::abs(u.product - 0.5));
      } catch (const std::exception& e) {
        rep_.failures.push_back("coherent: z = " + z_label(z) + ": " + e.what());
      }
    }
    add("coherent_eigen_phi", "coherent", e_phi, 100 * tol_);
    add("coherent_eigen_psi", "coherent", e_psi, 100 * tol_);
    add("hatted_norm", "coherent", h_norm, tol_);
    add("a_phi_eigen", "coherent", a_eig, 100 * tol_);
    add("heisenberg", "coherent", heis, 1000 * tol_);
    add("a_phi_ladder", "coherent", hatted_ladder_defect(a_phi, hatted), 100 * tol_);
    add("a_phi_commutator", "coherent", hatted_commutator_defect(a_phi, hatted, dim.guard), 100 * tol_);
    const NumberConsistency nc = n_phi_consistency(roots, B * A, a_phi, hatted);
    add("n_phi_eigen", "coherent", nc.eigen, 100 * tol_);
    add("n_phi_matrix", "coherent", nc.matrix, 100 * tol_);

    const int K = std::max(1, std::min(cfg_.quad_block, cfg_.nmax - 4));
    const QuadratureResult q = resolution_quadrature(phis, psis, cfg_.radius, cfg_.radial_nodes,
                                                     angular_nodes_for(cfg_, K), K, 1000 * tol_);
    add("quadrature_resolution", "coherent", q.resolution_defect, 1000 * tol_);
    add("quadrature_eta_phi", "coherent", q.eta_phi_defect, 1000 * tol_);
    add("quadrature_eta_psi", "coherent", q.eta_psi_defect, 1000 * tol_);
    rep_.checks.push_back({"quadrature_tail_rule", "coherent", q.tail_rule_ok ? 0.0 : 1.0, 0.5, false});
  }

  const RunConfig& cfg_;
  RunReport& rep_;
  double tol_;
};

}  // namespace

RunReport run_analyze(const RunConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.config = config;
  Pipeline(config, rep).run();
  rep.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

SweepResult run_sweep(const RunConfig& config) {
  config.validate();
  if (config.axis.empty()) throw ConfigError("sweep requires an axis");
  SweepResult out;
  out.axis = config.axis;
  out.parameters = config.values;
  std::stable_sort(out.parameters.begin(), out.parameters.end());
  out.reports.resize(out.parameters.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < out.parameters.size(); i = next++) {
      RunConfig c = config.with_axis_value(out.parameters[i]);
      c.axis.clear();
      c.values.clear();
      out.reports[i] = run_analyze(c);
    }
  };
  const int n = std::max(1, std::min<int>(config.workers, static_cast<int>(out.parameters.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

namespace {

nlohmann::json num(double v) { return finite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["family"] = c.family;
  j["s"] = c.s;
  j["alpha"] = c.alpha;
  j["mu"] = c.mu;
  if (c.family == "custom") {
    j["beta"] = c.beta;
    j["gamma"] = c.gamma;
    j["delta"] = c.delta;
  }
  j["dim"] = c.dim;
  j["guard"] = c.guard;
  j["nmax"] = c.nmax;
  j["tol"] = c.tol;
  nlohmann::json zs = nlohmann::json::array();
  for (Complex z : c.z) zs.push_back({z.real(), z.imag()});
  j["z"] = zs;
  j["radius"] = c.radius;
  j["radial_nodes"] = c.radial_nodes;
  j["angular_nodes"] = c.angular_nodes;
  j["quad_block"] = c.quad_block;
  j["fit_window"] = c.fit_window;
  j["seed"] = c.seed;
  return j;
}

nlohmann::json brackets_json(const RieszBrackets& b) {
  nlohmann::json j;
  j["nmax"] = b.nmax;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  return j;
}

}  // namespace

nlohmann::json report_json(const RunReport& r) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kVersion;
  j["config"] = config_json(r.config);
  j["params"] = r.params_label;
  j["admissibility"] = {{"ok", r.admissibility.ok}, {"margin", num(r.admissibility.margin)},
                        {"reason", r.admissibility.reason}};
  j["degraded_precision"] = r.degraded;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"module", c.module},
                      {"value", num(c.value)},
                      {"tolerance", c.tolerance},
                      {"asserted", c.asserted},
                      {"verdict", !c.asserted ? "reported" : (c.passed() ? "pass" : "fail")}});
  j["checks"] = checks;
  j["riesz"] = {{"phi", brackets_json(r.riesz_phi)}, {"psi", brackets_json(r.riesz_psi)}};
  nlohmann::json h = nlohmann::json::array();
  for (const auto& e : r.heisenberg)
    h.push_back({{"z", {e.z.real(), e.z.imag()}}, {"product", num(e.product)}, {"dx", num(e.dx)}, {"dp", num(e.dp)}});
  j["heisenberg"] = h;
  if (r.has_exponents) {
    const auto& e = r.exponents;
    j["exponents"] = {{"fitted", {{"phi", e.fitted.phi}, {"psi", e.fitted.psi}}},
                      {"expected", {{"phi", e.expected.phi}, {"psi", e.expected.psi}}},
                      {"phi_error", e.phi_error},
                      {"psi_error", e.psi_error},
                      {"parity", e.parity}};
  }
  j["failures"] = r.failures;
  j["verdict"] = r.pass() ? "pass" : "fail";
  j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j;
}

std::string defects_csv(const RunReport& r) {
  std::ostringstream os;
  os << "name,module,value,tolerance,asserted,verdict\n";
  for (const auto& c : r.checks)
    os << c.name << ',' << c.module << ',' << fmt(c.value) << ',' << fmt(c.tolerance) << ','
       << (c.asserted ? "true" : "false") << ',' << (!c.asserted ? "reported" : (c.passed() ? "pass" : "fail"))
       << '\n';
  return os.str();
}

std::string sweep_csv(const SweepResult& sweep) {
  std::vector<std::string> names;
  for (const auto& r : sweep.reports)
    for (const auto& c : r.checks)
      if (std::find(names.begin(), names.end(), c.name) == names.end()) names.push_back(c.name);
  std::ostringstream os;
  os << "parameter";
  for (const auto& n : names) os << ',' << n;
  os << ",riesz_lower,riesz_upper,heisenberg_mean,degraded,failed\n";
  for (size_t i = 0; i < sweep.reports.size(); ++i) {
    const RunReport& r = sweep.reports[i];
    os << fmt(sweep.parameters[i]);
    for (const auto& n : names) {
      const Check* c = r.find(n);
      os << ',';
      if (c) os << fmt(c->value);
    }
    os << ',' << fmt(r.riesz_lower()) << ',' << fmt(r.riesz_upper()) << ',' << fmt(r.heisenberg_mean()) << ','
       << (r.degraded ? 1 : 0) << ',' << (r.pass() ? 0 : 1) << '\n';
  }
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("write failed for '" + path + "'");
}

int emit_report(const RunReport& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
  write_text((std::filesystem::path(dir) / "report.json").string(), report_json(report).dump(2) + "\n");
  write_text((std::filesystem::path(dir) / "defects.csv").string(), defects_csv(report));
  return report.pass() ? 0 : 1;
}

std::vector<CoherentRow> coherent_scan(const RunConfig& config) {
  config.validate();
  const DeformationParams p = config.params();
  const FockDim dim(config.dim, config.guard);
  const auto pair = deformation_pair(p, dim);
  const FamilyPair fams = biorthogonal_families(p, dim, config.nmax);
  const FrameRoots roots = frame_roots(fams.phis);
  const FockFamily hatted = orthonormalize(fams.phis);
  const MatrixXc a_phi = a_phi_operator(roots.half, roots.half_inv, pair.A);
  const MatrixXc Bd = pair.B.adjoint();
  std::vector<CoherentRow> rows;
  for (Complex z : config.z) {
    CoherentRow row;
    row.z = z;
    try {
      const CoherentState sp = coherent_state(z, fams.phis);
      const CoherentState ss = coherent_state(z, fams.psis);
      const CoherentState sh = hatted_coherent(z, hatted);
      row.series_tail = sp.series_tail;
      row.eigen_phi = eigen_residual(pair.A, sp, dim);
      row.eigen_psi = eigen_residual(Bd, ss, dim);
      row.hatted_norm_defect = std::abs(sh.coeffs.norm() - 1.0);
      row.a_phi_eigen = eigen_residual(a_phi, sh, dim);
      row.relation = (roots.half * sh.coeffs - sp.coeffs).norm();
      row.uncertainty = heisenberg(sh, a_phi);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string coherent_csv(const std::vector<CoherentRow>& rows) {
  std::ostringstream os;
  os << "z_re,z_im,series_tail,eigen_phi,eigen_psi,hatted_norm_defect,a_phi_eigen,relation,dx,dp,product,error\n";
  for (const auto& r : rows) {
    os << fmt(r.z.real()) << ',' << fmt(r.z.imag()) << ',' << fmt(r.series_tail) << ',' << fmt(r.eigen_phi) << ','
       << fmt(r.eigen_psi) << ',' << fmt(r.hatted_norm_defect) << ',' << fmt(r.a_phi_eigen) << ','
       << fmt(r.relation) << ',' << fmt(r.uncertainty.dx) << ',' << fmt(r.uncertainty.dp) << ','
       << fmt(r.uncertainty.product) << ',' << '"' << r.error << '"' << '\n';
  }
  return os.str();
}

}  // namespace pbfock
