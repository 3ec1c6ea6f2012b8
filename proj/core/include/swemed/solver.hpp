#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swemed/spectral.hpp"
#include "swemed/system.hpp"

namespace swemed {

struct Mesh {
  double x_left = 0.0;
  double x_right = 1.0;
  int n_cells = 1;

  double dx() const { return (x_right - x_left) / n_cells; }
  double center(int i) const { return x_left + (i + 0.5) * dx(); }
};

enum class BoundaryPolicy { ZeroGradient, Periodic };
enum class ModelVariant { Sweed, Hswem, Hswemed };
enum class WaveSpeedMode { Eigensolve, Bound };

struct SolverConfig {
  std::optional<double> fixed_dt;  // CFL-driven when absent
  double cfl = 0.45;
  double end_time = 1.0;
  double dry_threshold = 1e-4;
  ModelVariant model = ModelVariant::Hswemed;
  MatrixKind matrix = MatrixKind::Regularized;
  WaveSpeedMode wave_speed = WaveSpeedMode::Eigensolve;
  BoundaryPolicy boundary = BoundaryPolicy::ZeroGradient;
  bool wet_dry = true;

  bool exchange_enabled() const { return model != ModelVariant::Hswem; }
};

/// Cell-centered conserved field with one ghost layer on each side.
/// Cell indices run -1 .. n_cells (ghosts at the ends).
class Field {
 public:
  Field(int order, int n_cells)
      : order_(order), n_cells_(n_cells),
        data_(Eigen::VectorXd::Zero(std::int64_t(n_cells + 2) * state_size(order))) {}

  int order() const { return order_; }
  int n_cells() const { return n_cells_; }
  int width() const { return state_size(order_); }

  Eigen::Ref<Eigen::VectorXd> cell(int i) {
    return data_.segment(std::int64_t(i + 1) * width(), width());
  }
  Eigen::Ref<const Eigen::VectorXd> cell(int i) const {
    return data_.segment(std::int64_t(i + 1) * width(), width());
  }

  double& at(int i, int component) { return data_[std::int64_t(i + 1) * width() + component]; }
  double at(int i, int component) const { return data_[std::int64_t(i + 1) * width() + component]; }

  Eigen::VectorXd& raw() { return data_; }
  const Eigen::VectorXd& raw() const { return data_; }

 private:
  int order_;
  int n_cells_;
  Eigen::VectorXd data_;
};

struct SolverAbort : std::runtime_error {
  SolverAbort(std::string what, int cell, double time, Eigen::VectorXd state)
      : std::runtime_error(std::move(what)), cell(cell), time(time), state(std::move(state)) {}
  int cell;
  double time;
  Eigen::VectorXd state;
};

/// Bookkeeping for one Euler stage: component-wise sums of the fluctuation
/// updates and sources (the discrete mass/sediment ledgers), the largest
/// interface speed seen, and failure data.
struct StepStats {
  double max_speed = 0.0;
  Eigen::VectorXd fluctuation_sum;  // sum_i (D+_{i-1/2} + D-_{i+1/2}) per component
  Eigen::VectorXd source_sum;       // sum_i S(W_i) per component
  long clamp_events = 0;
  bool ok = true;
  int bad_cell = -1;
};

/// Fills the ghost layer; interior cells are untouched.
void apply_boundaries(Field& field, BoundaryPolicy policy);

/// Clamps h to >= 0 and zeroes discharge, moments and suspended load in
/// cells below the dry threshold.
void wet_dry_fix(Field& field, double dry_threshold);

/// Clamps h c_m into [0, h] so that c_m stays in [0,1]; returns the number
/// of cells touched.
long clamp_concentration(Field& field);

/// One forward-Euler stage of the path-conservative Lax-Friedrichs
/// semi-discretization. `in` must have its ghost cells filled. Writes the
/// updated interior into `out` (ghosts copied verbatim).
void euler_stage(Field& out, const Field& in, double dt, const Mesh& mesh,
                 const SolverConfig& config, const BasisTables& tables,
                 const SedimentParams& params, StepStats* stats = nullptr);

/// Convenience wrapper returning the updated field.
Field step(const Field& field, double dt, const Mesh& mesh, const SolverConfig& config,
           const BasisTables& tables, const SedimentParams& params,
           StepStats* stats = nullptr);

/// Largest per-cell wave speed of the current field under the configured
/// speed estimator (interior cells only).
double field_max_speed(const Field& field, const SolverConfig& config,
                       const BasisTables& tables, const SedimentParams& params);

struct AdvanceStats {
  long steps = 0;
  long clamp_events = 0;
  double min_h = 0.0;
  double max_speed_seen = 0.0;
};

/// Integrates to config.end_time with the four-stage third-order SSP
/// Runge-Kutta composition of Euler stages. Snapshot times must be sorted;
/// the step size is shortened to land on each of them and on end_time.
/// Throws SolverAbort on NaN/Inf states or time-step underflow.
AdvanceStats advance(Field& field, const Mesh& mesh, const SolverConfig& config,
                     const BasisTables& tables, const SedimentParams& params,
                     const std::vector<double>& snapshot_times,
                     const std::function<void(double, const Field&)>& on_snapshot);

}  // namespace swemed
