#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbfock/position_space.hpp"
#include "pbfock/reports.hpp"
#include "pbfock/riesz_gen.hpp"

namespace fs = std::filesystem;
using namespace pbfock;

namespace {

struct CommonArgs {
  RunConfig cfg;
  std::vector<std::string> z;
};

void add_family_options(CLI::App* sub, CommonArgs& a) {
  RunConfig& c = a.cfg;
  sub->add_option("--family", c.family, "harmonic | example3 | example3b | example4 | custom")->capture_default_str();
  sub->add_option("-s,--s", c.s, "deformation parameter s (example3, example3b)")->capture_default_str();
  sub->add_option("--alpha", c.alpha, "alpha (example4, custom)")->capture_default_str();
  sub->add_option("--mu", c.mu, "mu (example4)")->capture_default_str();
  sub->add_option("--beta", c.beta, "beta (custom)")->capture_default_str();
  sub->add_option("--gamma", c.gamma, "gamma (custom)")->capture_default_str();
  sub->add_option("--delta", c.delta, "delta (custom)")->capture_default_str();
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--tol", c.tol, "base tolerance")->capture_default_str();
  sub->set_config("--config", "", "flat TOML/INI configuration file");
}

void add_common(CLI::App* sub, CommonArgs& a) {
  add_family_options(sub, a);
  RunConfig& c = a.cfg;
  sub->add_option("--dim", c.dim, "highest Fock level D")->capture_default_str();
  sub->add_option("--guard", c.guard, "guard band g")->capture_default_str();
  sub->add_option("--nmax", c.nmax, "highest family index")->capture_default_str();
  sub->add_option("--z", a.z, "coherent-state label re,im (repeatable)");
  sub->add_option("--radius", c.radius, "quadrature disk radius")->capture_default_str();
  sub->add_option("--radial-nodes", c.radial_nodes, "Gauss-Legendre nodes in r^2")->capture_default_str();
  sub->add_option("--angular-nodes", c.angular_nodes, "uniform angular nodes (0 = automatic)")->capture_default_str();
  sub->add_option("--quad-block", c.quad_block, "Fock block size for the quadrature check")->capture_default_str();
  sub->add_option("--fit-window", c.fit_window, "half-width of the Gaussian fit window")->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--workers", c.workers, "concurrent sweep workers")->capture_default_str();
}

RunConfig finish(CommonArgs& a) {
  if (!a.z.empty()) {
    a.cfg.z.clear();
    for (const auto& t : a.z) a.cfg.z.push_back(parse_complex(t));
  }
  return a.cfg;
}

fs::path out_file(const RunConfig& c, const std::string& name) {
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw Error("cannot create output directory '" + c.out + "': " + ec.message());
  return fs::path(c.out) / name;
}

void print_checks(const RunReport& r) {
  for (const auto& c : r.checks)
    std::printf("  %-24s %-14s %12.4e  tol %9.2e  %s\n", c.name.c_str(), c.module.c_str(), c.value, c.tolerance,
                !c.asserted ? "reported" : (c.passed() ? "pass" : "FAIL"));
  for (const auto& f : r.failures) std::printf("  error: %s\n", f.c_str());
}

int cmd_analyze(CommonArgs& a) {
  const RunConfig c = finish(a);
  const RunReport r = run_analyze(c);
  const int code = emit_report(r, c.out);
  std::printf("%s  degraded=%d\n", r.params_label.c_str(), r.degraded ? 1 : 0);
  print_checks(r);
  std::printf("verdict: %s  (%.3f s)\n", r.pass() ? "pass" : "fail", r.wall_clock_seconds);
  return code;
}

int cmd_sweep(CommonArgs& a) {
  const RunConfig c = finish(a);
  const SweepResult s = run_sweep(c);
  write_text(out_file(c, "sweep.csv").string(), sweep_csv(s));
  nlohmann::json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["version"] = kVersion;
  summary["axis"] = s.axis;
  nlohmann::json rows = nlohmann::json::array();
  bool all = true;
  for (size_t i = 0; i < s.reports.size(); ++i) {
    const RunReport& r = s.reports[i];
    all = all && r.pass();
    rows.push_back({{"parameter", s.parameters[i]},
                    {"verdict", r.pass() ? "pass" : "fail"},
                    {"degraded_precision", r.degraded},
                    {"failures", r.failures}});
    std::printf("%s = %-10g %s%s\n", s.axis.c_str(), s.parameters[i], r.pass() ? "pass" : "FAIL",
                r.degraded ? " (degraded)" : "");
  }
  summary["rows"] = rows;
  write_text(out_file(c, "sweep_summary.json").string(), summary.dump(2) + "\n");
  return all ? 0 : 1;
}

int cmd_coherent(CommonArgs& a) {
  const RunConfig c = finish(a);
  const auto rows = coherent_scan(c);
  write_text(out_file(c, "coherent.csv").string(), coherent_csv(rows));
  bool ok = true;
  for (const auto& r : rows) {
    const bool row_ok = r.error.empty() && r.eigen_phi < 100 * c.tol && r.eigen_psi < 100 * c.tol &&
                        r.hatted_norm_defect < c.tol && std::abs(r.uncertainty.product - 0.5) < 1000 * c.tol;
    ok = ok && row_ok;
    std::printf("z = %g%+gi  eigen_phi %.3e  eigen_psi %.3e  |hat|-1 %.3e  dx*dp %.12f  %s\n", r.z.real(),
                r.z.imag(), r.eigen_phi, r.eigen_psi, r.hatted_norm_defect, r.uncertainty.product,
                r.error.empty() ? (row_ok ? "pass" : "FAIL") : r.error.c_str());
  }
  return ok ? 0 : 1;
}

struct RieszArgs {
  std::string matrix;
  std::string export_path;
  int dim = 60;
  double cond = 5.0;
  std::uint64_t seed = 1;
  int guard = 2;
  double tol = 1e-8;
  std::string out = ".";
};

int cmd_riesz(const RieszArgs& a) {
  const RieszSource src = a.matrix.empty() ? random_riesz_source(a.dim, a.cond, a.seed, a.guard)
                                           : make_riesz_source(read_matrix(a.matrix), a.guard);
  if (!a.export_path.empty()) write_matrix(a.export_path, src.R);
  const PseudoBosonSystem sys = from_riesz_basis(src);
  const RieszItemChecks r = riesz_item_checks(sys, src);
  const NormBounds nb = norm_bound_check(sys);
  const bool ok = r.item1() < a.tol && r.item2() < a.tol && r.item3() < a.tol && r.item4() < a.tol &&
                  r.commutator < 1e-10 && nb.max_phi_norm <= nb.bound_phi * (1 + 1e-12) &&
                  nb.max_psi_norm <= nb.bound_psi * (1 + 1e-12);
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kVersion;
  j["dim"] = src.dim.levels;
  j["condition"] = r.condition;
  j["items"] = {{"item1_vacuum_and_raising", r.item1()},
                {"item2_psi_vacuum", r.item2()},
                {"item3_biorthogonal_psi", r.item3()},
                {"item4_riesz_bounds", r.item4()}};
  j["raising_power_diagnostic"] = r.raising_power;
  j["riesz_bounds"] = {r.riesz_lower, r.riesz_upper};
  j["commutator"] = r.commutator;
  j["ccr_defect"] = r.ccr_defect;
  j["norm_bounds"] = {{"max_phi_norm", nb.max_phi_norm}, {"bound_phi", nb.bound_phi},
                      {"max_psi_norm", nb.max_psi_norm}, {"bound_psi", nb.bound_psi},
                      {"unit_defect", nb.unit_defect}};
  j["tolerance"] = a.tol;
  j["verdict"] = ok ? "pass" : "fail";
  std::error_code ec;
  fs::create_directories(a.out, ec);
  write_text((fs::path(a.out) / "riesz.json").string(), j.dump(2) + "\n");
  std::printf("%s", j.dump(2).c_str());
  std::printf("\n");
  return ok ? 0 : 1;
}

struct CounterArgs {
  std::string kind = "single";
  std::vector<double> values = {10, 100, 1000};
  std::string out = ".";
};

int cmd_counterexample(const CounterArgs& a) {
  std::error_code ec;
  fs::create_directories(a.out, ec);
  char buf[160];
  std::string csv;
  bool ok = true;
  if (a.kind == "example1") {
    csv = "L,integral,reference,abs_error,measure\n";
    for (const auto& r : example1_divergence(a.values)) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.3e,%.17g\n", r.L, r.integral, r.reference,
                    std::abs(r.integral - r.reference), r.measure);
      csv += buf;
      ok = ok && std::abs(r.integral - r.reference) < 1e-8 && r.measure < M_PI;
    }
  } else {
    CounterexampleKind kind;
    if (a.kind == "single") kind = CounterexampleKind::single;
    else if (a.kind == "even_odd") kind = CounterexampleKind::even_odd;
    else throw ConfigError("unknown counterexample kind '" + a.kind + "'");
    std::vector<int> Ms;
    for (double v : a.values) {
      if (v != std::floor(v) || v < 1) throw ConfigError("counterexample M values must be positive integers");
      Ms.push_back(static_cast<int>(v));
    }
    const auto rows = unbounded_metric_demo(kind, Ms);
    csv = "M,metric_norm,inverse_norm,biorthogonality\n";
    std::vector<double> x, y;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.M, r.metric_norm, r.inverse_norm, r.biorthogonality);
      csv += buf;
      ok = ok && r.biorthogonality == 0.0;
      x.push_back(r.M);
      y.push_back(r.metric_norm);
    }
    if (x.size() >= 2) {
      const PowerFit f = log_log_fit(x, y);
      std::printf("growth exponent %.12f (R^2 = %.12f)\n", f.exponent, f.r_squared);
    }
  }
  write_text((fs::path(a.out) / ("counterexample_" + a.kind + ".csv")).string(), csv);
  std::printf("%s", csv.c_str());
  return ok ? 0 : 1;
}

int cmd_position(CommonArgs& a, int grid_points) {
  const RunConfig c = finish(a);
  c.validate();
  const DeformationParams p = c.params();
  const ExponentComparison e = compare_exponents(p, c.fit_window, grid_points);
  const Eigen::VectorXd xs = uniform_grid(-4.0, 4.0, grid_points);
  write_grid_csv(out_file(c, "phi_vacuum.csv").string(), state_on_grid(position_vacuum(p, false), xs));
  write_grid_csv(out_file(c, "psi_vacuum.csv").string(), state_on_grid(position_vacuum(p, true), xs));
  const bool ok = e.phi_error < 100 * c.tol && e.psi_error < 100 * c.tol && e.parity < 100 * c.tol;
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kVersion;
  j["params"] = p.label();
  j["fitted"] = {{"phi", e.fitted.phi}, {"psi", e.fitted.psi}};
  j["expected"] = {{"phi", e.expected.phi}, {"psi", e.expected.psi}};
  j["phi_error"] = e.phi_error;
  j["psi_error"] = e.psi_error;
  j["parity"] = e.parity;
  j["verdict"] = ok ? "pass" : "fail";
  write_text(out_file(c, "position.json").string(), j.dump(2) + "\n");
  std::printf("%s\n", j.dump(2).c_str());
  return ok ? 0 : 1;
}

// CLI11 does not read a config file attached to a subcommand, so flat keys
// (or keys under a section named after the subcommand) are applied here to
// options that were not given on the command line.
void apply_config_file(CLI::App* sub) {
  CLI::Option* cfg = sub->get_option_no_throw("--config");
  if (cfg == nullptr || cfg->count() == 0) return;
  const std::string path = cfg->as<std::string>();
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::FileError&) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  for (const auto& item : items) {
    if (item.name.empty() || item.name == "++" || item.name == "--") continue;
    const bool here = item.parents.empty() ||
                      (item.parents.size() == 1 && item.parents[0] == sub->get_name());
    if (!here) continue;
    std::string key = item.name;
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw ConfigError("unknown config key '" + item.name + "'");
    if (opt == cfg || opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-boson verification in truncated Fock space"};
  app.require_subcommand(1);

  CommonArgs analyze_args, sweep_args, coherent_args, position_args;
  auto* analyze = app.add_subcommand("analyze", "run the full verification pipeline");
  add_common(analyze, analyze_args);

  auto* sweep = app.add_subcommand("sweep", "run the pipeline over one parameter axis");
  add_common(sweep, sweep_args);
  sweep->add_option("--axis", sweep_args.cfg.axis, "s | alpha | mu | dim | nmax | guard")->required();
  sweep->add_option("--values", sweep_args.cfg.values, "axis values")->delimiter(',')->required();

  auto* coherent = app.add_subcommand("coherent-scan", "coherent-state checks for each --z");
  add_common(coherent, coherent_args);

  RieszArgs riesz_args;
  auto* riesz = app.add_subcommand("riesz-from-matrix", "pseudo-bosons from a Riesz basis matrix");
  riesz->add_option("--matrix", riesz_args.matrix, "matrix file (columns are the basis vectors)");
  riesz->add_option("--export", riesz_args.export_path, "write the source matrix to this file");
  riesz->add_option("--dim", riesz_args.dim, "highest level of a generated source")->capture_default_str();
  riesz->add_option("--cond", riesz_args.cond, "condition number of a generated source")->capture_default_str();
  riesz->add_option("--seed", riesz_args.seed, "seed of a generated source")->capture_default_str();
  riesz->add_option("--guard", riesz_args.guard, "guard band")->capture_default_str();
  riesz->add_option("--tol", riesz_args.tol, "item-check tolerance")->capture_default_str();
  riesz->add_option("--out", riesz_args.out, "output directory")->capture_default_str();

  CounterArgs counter_args;
  auto* counter = app.add_subcommand("counterexample", "unbounded metric and weighted-space demos");
  counter->add_option("--kind", counter_args.kind, "single | even_odd | example1")->capture_default_str();
  counter->add_option("--values", counter_args.values, "M values (or L for example1)")->delimiter(',');
  counter->add_option("--out", counter_args.out, "output directory")->capture_default_str();

  int grid_points = 201;
  auto* position = app.add_subcommand("position-check", "Gaussian vacuum exponents in position space");
  add_common(position, position_args);
  position->add_option("--grid-points", grid_points, "uniform grid size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (auto* sub : {analyze, sweep, coherent, position})
      if (*sub) apply_config_file(sub);
    if (*analyze) return cmd_analyze(analyze_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*coherent) return cmd_coherent(coherent_args);
    if (*riesz) return cmd_riesz(riesz_args);
    if (*counter) return cmd_counterexample(counter_args);
    if (*position) return cmd_position(position_args, grid_points);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
