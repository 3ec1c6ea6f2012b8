#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "swemed/diagnostics.hpp"
#include "swemed/solver.hpp"

namespace swemed {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Piecewise-constant initial profile: `value` everywhere, or a step
/// jumping from `left` to `right` at x0.
struct InitialProfile {
  enum class Kind { Uniform, Step } kind = Kind::Uniform;
  double value = 0.0;
  double x0 = 0.0;
  double left = 0.0;
  double right = 0.0;

  double operator()(double x) const {
    return kind == Kind::Uniform ? value : (x <= x0 ? left : right);
  }
};

struct OutputPlan {
  int snapshot_count = 11;                  // uniform times in [0, t_end]
  std::vector<double> snapshot_times;       // explicit times win over the count
  std::vector<double> profile_stations;     // x positions for vertical profiles
  int profile_points = 41;                  // zeta resolution of the profiles
};

/// A fully described run: mesh, physics, initial data and output plan.
struct Scenario {
  std::string name;
  double x_left = -1.0;
  double x_right = 1.0;
  int n_cells = 100;
  double end_time = 1.0;  // seconds (the laboratory configs quote a bare t = 1)
  int order = 1;
  ModelVariant model = ModelVariant::Hswemed;
  MatrixKind matrix = MatrixKind::Regularized;
  WaveSpeedMode wave_speed = WaveSpeedMode::Eigensolve;
  BoundaryPolicy boundary = BoundaryPolicy::ZeroGradient;
  bool wet_dry = false;
  double dry_threshold = 1e-4;
  SedimentParams params;
  InitialProfile h0;
  InitialProfile hb0;
  std::optional<double> fixed_dt;
  std::optional<double> cfl;
  OutputPlan output;

  std::vector<std::string> defaults_applied;  // provenance for the manifest

  Mesh mesh() const { return {x_left, x_right, n_cells}; }
  void validate() const;  // throws ValidationError
};

/// Names: academic, config{1,2,3}-{pvc,sand}. Throws ValidationError with
/// the list of valid names otherwise.
Scenario builtin(const std::string& name);
std::vector<std::string> builtin_names();

/// Loads a scenario from a JSON config file (or a run manifest, which uses
/// the same schema). Unknown keys are rejected; d_s / D_sg are given in mm
/// and converted to metres. Throws ValidationError.
Scenario load_config(const std::filesystem::path& path);

Field initial_field(const Scenario& scenario);

/// Fixed time step used when none is configured:
/// 0.2 dx / (2 * initial bound speed).
double default_fixed_dt(const Scenario& scenario);

std::vector<double> snapshot_times(const Scenario& scenario);

struct RunResult {
  std::filesystem::path dir;
  AdvanceStats stats;
  double min_h_final = 0.0;
  bool aborted = false;
  std::string abort_reason;
};

/// Executes the scenario and writes manifest.json, snapshots/, profiles/,
/// energy.csv and froude.csv (optionally spectra/) into out_dir. Outputs are
/// written atomically; on solver abort partial outputs are kept and the
/// manifest is flagged.
RunResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir,
                       bool dump_spectra = false);

struct CompareResult {
  double l1 = 0.0;
  double linf = 0.0;
  double rms = 0.0;
  int points = 0;
};

/// Compares a named field of a run snapshot against a reference CSV with
/// columns x,value, linearly interpolated onto the run grid.
/// `time` selects the snapshot; the final one when absent.
CompareResult compare_with_reference(const std::filesystem::path& run_dir,
                                     const std::filesystem::path& reference_csv,
                                     const std::string& field,
                                     std::optional<double> time = {});

}  // namespace swemed
