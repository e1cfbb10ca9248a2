#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwlab/damping.hpp"
#include "dwlab/energy.hpp"
#include "dwlab/rates.hpp"

namespace dwlab {

// Config file failures: ParseError for malformed JSON or unreadable files,
// ValidationError (with the offending field path) for well-formed but
// inadmissible input. The CLI maps them to exit codes 2 and 3.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field_path, const std::string& msg)
      : std::runtime_error(field_path + ": " + msg), field(std::move(field_path)) {}
  std::string field;
};

struct GridConfig {
  double r0 = 1.0;
  double r_max = 205.0;
  int n = 4001;
};

struct DataConfig {
  double center = 3.0;
  double width = 1.0;
  double amp_u0 = 1.0;
  double amp_u1 = 0.0;
};

struct TimeConfig {
  double cfl = 0.5;    // dt = cfl * dr unless dt is set
  double dt = 0.0;
  double T = 200.0;
  int sample_count = 120;     // geometric ladder from sample_t0 to T
  double sample_t0 = 1.0;
  std::vector<double> snapshot_times;  // CSV profile dumps; default 0, T/2, T
};

struct FitWindow {
  double t_lo = 0.0;  // 0 -> T/5 (wave) or T/10 (heat), floored at 1
  double t_hi = 0.0;  // 0 -> T
};

struct HeatOnlyConfig {
  double T = 500.0;
  double dt = 0.01;
  double r_max = 0.0;  // 0 -> r0 + 5 + 6 T^{1/(2+alpha)}, rounded up
  int n = 0;           // 0 -> spacing 0.02
};

struct DuhamelConfig {
  double t = 8.0;
  double dt_quad = 0.5;
  double dt_heat = 0.01;
  double r_max = 14.0;
  int n = 521;
  double dt_wave = 0.0125;
};

struct Tolerances {
  double cor2 = 0.08;       // two-sided window around the predicted u rate
  double heat = 0.06;       // two-sided window around the predicted heat rate
  double thm1_gap = 0.45;   // required extra decay of u - v (one-sided)
  double ea_min = 0.85;     // one-sided weighted-energy rates
  double e1_min = 1.8;
  double support = 1e-12;
  double identity_rel = 1e-8;  // slack for the pointwise inequality checks
  double duhamel_rel = 0.05;
  double isometry_rel = 1e-6;
};

struct ExperimentConfig {
  int dim = 2;
  double alpha = 1.0;
  double a0 = 1.0;
  double eps = 0.1;
  std::optional<BumpSpec> damping_bump;
  GridConfig grid;
  DataConfig data;
  TimeConfig time;
  FitWindow fit;
  HeatOnlyConfig heat;
  DuhamelConfig duhamel;
  Tolerances tol;
  std::vector<std::string> checks;  // empty -> mode defaults
  std::string output_dir = "out";
  std::map<std::string, std::vector<double>> sweep;  // keys: alpha, eps
};

// {} is valid: every field has a default. Unknown keys and unknown check
// names are rejected.
ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& cfg);

// Environment override DWLAB_OUTPUT_DIR wins over the config value.
std::string resolve_output_dir(const ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // what it was compared against
  std::string detail;
};

struct RunArtifact {
  std::vector<Verdict> verdicts;
  std::vector<CheckResult> checks;
  std::vector<std::string> files;  // everything written, relative to out_dir
  bool all_pass = true;
  std::string out_dir;
};

// Subcommand drivers. Each writes its CSV/SVG/JSON artifacts under
// resolve_output_dir(cfg) and never prints; callers own the reporting.
RunArtifact run_weight(const ExperimentConfig& cfg);
RunArtifact run_wave(const ExperimentConfig& cfg);
RunArtifact run_heat(const ExperimentConfig& cfg);
RunArtifact run_compare(const ExperimentConfig& cfg);
RunArtifact run_transform_check(const ExperimentConfig& cfg);
RunArtifact run_duhamel(const ExperimentConfig& cfg);

// Cross product of the sweep lists, one compare run per variant, executed on
// a small thread pool; each variant writes to its own subdirectory.
RunArtifact run_sweep(const ExperimentConfig& cfg);

// Names accepted in "checks", with the modes that can evaluate them.
const std::map<std::string, std::vector<std::string>>& check_registry();

}  // namespace dwlab
