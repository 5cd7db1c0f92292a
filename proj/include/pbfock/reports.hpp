#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbfock/coherent.hpp"
#include "pbfock/fock_family.hpp"
#include "pbfock/metric_frames.hpp"
#include "pbfock/position_space.hpp"

namespace pbfock {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string family = "example3";
  double s = 0.0;
  double alpha = 2.0;
  double mu = 1.2;
  double beta = 0.0;   // custom family only
  double gamma = 0.0;  // custom family only
  double delta = 1.0;  // custom family only
  int dim = 100;
  int guard = 4;
  int nmax = 20;
  double tol = 1e-8;
  std::vector<Complex> z = {Complex(0.0, 0.0), Complex(0.5, 0.0), Complex(0.5, 0.5)};
  double radius = 7.0;
  int radial_nodes = 64;
  int angular_nodes = 0;  // 0 selects max(2K + 8, nmax + 2)
  int quad_block = 8;
  double fit_window = 2.0;
  std::string axis;
  std::vector<double> values;
  std::string out = ".";
  std::uint64_t seed = 1;
  int workers = 1;

  // Throws ConfigError.
  void validate() const;
  void validate_point() const;
  DeformationParams params() const;
  // Copy with the sweep axis set to value.
  RunConfig with_axis_value(double value) const;
};

// "re,im" or "re".
Complex parse_complex(const std::string& text);

struct Check {
  std::string name;
  std::string module;
  double value = 0.0;
  double tolerance = 0.0;
  bool asserted = true;

  bool passed() const { return value < tolerance; }
};

struct HeisenbergEntry {
  Complex z;
  double product = 0.0;
  double dx = 0.0;
  double dp = 0.0;
};

struct RunReport {
  RunConfig config;
  std::string params_label;
  Admissibility admissibility;
  bool degraded = false;
  std::vector<Check> checks;
  RieszBrackets riesz_phi;
  RieszBrackets riesz_psi;
  std::vector<HeisenbergEntry> heisenberg;
  bool has_exponents = false;
  ExponentComparison exponents;
  std::vector<std::string> failures;
  double wall_clock_seconds = 0.0;

  bool pass() const;
  const Check* find(const std::string& name) const;
  double riesz_lower() const { return riesz_phi.lower.empty() ? 0.0 : riesz_phi.lower.back(); }
  double riesz_upper() const { return riesz_phi.upper.empty() ? 0.0 : riesz_phi.upper.back(); }
  double heisenberg_mean() const;
};

RunReport run_analyze(const RunConfig& config);

struct SweepResult {
  std::string axis;
  std::vector<double> parameters;  // ascending
  std::vector<RunReport> reports;
};

// Points run concurrently on config.workers threads and are merged in ascending parameter order.
SweepResult run_sweep(const RunConfig& config);

nlohmann::json report_json(const RunReport& report);
std::string defects_csv(const RunReport& report);
std::string sweep_csv(const SweepResult& sweep);

// Writes report.json and defects.csv into dir; returns the exit code (0 pass, 1 fail).
int emit_report(const RunReport& report, const std::string& dir);

struct CoherentRow {
  Complex z;
  double series_tail = 0.0;
  double eigen_phi = 0.0;
  double eigen_psi = 0.0;
  double hatted_norm_defect = 0.0;
  double a_phi_eigen = 0.0;
  double relation = 0.0;  // || S^{1/2} hat(z) - phi(z) ||
  Uncertainty uncertainty;
  std::string error;
};

std::vector<CoherentRow> coherent_scan(const RunConfig& config);
std::string coherent_csv(const std::vector<CoherentRow>& rows);

void write_text(const std::string& path, const std::string& text);

}  // namespace pbfock
