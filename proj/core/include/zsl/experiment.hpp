#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "zsl/diagnostics.hpp"
#include "zsl/initial_data.hpp"
#include "zsl/limit.hpp"
#include "zsl/solver.hpp"
#include "zsl/symbols.hpp"

namespace zsl {

enum class ExperimentId {
  soliton_check,
  evolve,
  energy_drift,
  lambda_sweep,
  symbol_scan,
  hyperbolic_check,
};

std::string to_string(ExperimentId id);
/// Throws UsageError listing the valid ids.
ExperimentId experiment_from_string(const std::string& name);

struct GridSpec {
  int nx = 256;
  int ny = 256;
  double lx = 40.0;
  double ly = 40.0;
};

struct OutputSpec {
  /// Not part of the config hash, so the same experiment written to two
  /// directories hashes the same.
  std::string dir = "zsl-out";
  long record_stride = 10;
  /// Steps between checkpoints; 0 writes only the final state. Must be a
  /// multiple of record_stride.
  long checkpoint_stride = 0;
  bool plots = true;
};

struct HyperbolicCheckConfig {
  /// Random nodes for the symmetry check.
  int nodes = 1000;
  /// Times at which the trajectory residual is evaluated (each <= t_final).
  std::vector<double> probes{0.25, 0.5, 1.0};
};

struct ExperimentConfig {
  ExperimentId experiment = ExperimentId::soliton_check;
  GridSpec grid;
  SimParams sim;
  InitialSpec initial;
  OutputSpec output;
  DiagnosticsConfig diagnostics;
  /// lambda-sweep reads lambdas, dt0 and control from here; t_final,
  /// integrator and dealias come from `sim`, the data from `initial`.
  SweepConfig sweep;
  ScanConfig scan;
  HyperbolicCheckConfig hyperbolic;
  std::uint64_t seed = 20240607;
  int threads = 1;

  /// Throws UsageError naming the offending path.
  void validate() const;
};

/// Documented defaults for one experiment id.
ExperimentConfig default_config(ExperimentId id);

/// Reads a JSON document. "experiment" selects the defaults; every other key
/// overrides them. Unknown keys and out-of-range values throw UsageError
/// with the key path.
ExperimentConfig parse_config(const std::string& text);
/// Complete JSON form; parse_config(serialize(c)) reproduces c.
std::string serialize(const ExperimentConfig& c);
/// FNV-1a 64 of serialize(c) with output.dir cleared, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

/// One gating comparison in a summary.
struct Check {
  std::string name;
  double value = 0.0;
  /// "<", "<=", ">=" or "==".
  std::string relation;
  double limit = 0.0;
  bool passed = false;
};

Check make_check(std::string name, double value, std::string relation, double limit);

struct SolitonCheck {
  OdeCheck ode;
  /// Largest state perturbation over a zero-data evolution.
  double max_perturbation = 0.0;
  std::vector<DiagnosticsRecord> series;
  std::vector<Check> checks;
};

/// Ground-state residual and the zero-perturbation run with cfg.sim.
SolitonCheck soliton_check(const ExperimentConfig& cfg);

struct DriftCheck {
  double drift = 0.0;
  double drift_half = 0.0;
  double ratio = 0.0;
  std::vector<DiagnosticsRecord> series;
  std::vector<DiagnosticsRecord> series_half;
  std::vector<Check> checks;
};

/// Relative energy drift at cfg.sim.dt and dt/2.
DriftCheck energy_drift_check(const ExperimentConfig& cfg);

struct HyperbolicProbe {
  double t = 0.0;
  double residual = 0.0;
  double residual_half = 0.0;
  double ratio = 0.0;
};

struct HyperbolicCheck {
  /// Largest |M - M^T| over A^j, B^j, C^j and |K + K^T| over all nodes.
  double symmetry_defect = 0.0;
  /// max |matrix residual - direct residual| / max(1, max |residual|) on
  /// manufactured fields.
  double form_mismatch = 0.0;
  double max_w = 0.0;
  std::vector<HyperbolicProbe> probes;
  double min_ratio = 0.0;
  std::vector<Check> checks;
};

/// Matrix symmetries, matrix vs. direct residual and the residual of a
/// cfg.sim trajectory at dt and dt/2.
HyperbolicCheck hyperbolic_check(const ExperimentConfig& cfg);

/// The five scan reports in the order symbol1, symbol2, symbol3, z, b-region.
std::vector<ScanReport> symbol_scans(const ExperimentConfig& cfg);

/// Exit codes of run().
enum ExitCode : int { kOk = 0, kGatingFailed = 1, kIoFailure = 2, kNumericAbort = 3 };

/// Runs the experiment and writes its artifacts under cfg.output.dir:
/// summary.json, CSV series, checkpoints, SVG plots and run_info.json (the
/// only file carrying wall-clock data). Returns an ExitCode.
int run(const ExperimentConfig& cfg);

}  // namespace zsl
