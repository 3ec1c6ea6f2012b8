#include "swemed/solver.hpp"

#include <algorithm>
#include <cmath>

namespace swemed {

void apply_boundaries(Field& field, BoundaryPolicy policy) {
  const int n = field.n_cells();
  switch (policy) {
    case BoundaryPolicy::ZeroGradient:
      field.cell(-1) = field.cell(0);
      field.cell(n) = field.cell(n - 1);
      break;
    case BoundaryPolicy::Periodic:
      field.cell(-1) = field.cell(n - 1);
      field.cell(n) = field.cell(0);
      break;
  }
}

void wet_dry_fix(Field& field, double dry_threshold) {
  const int n = field.n_cells();
  const int order = field.order();
  for (int i = -1; i <= n; ++i) {
    auto w = field.cell(i);
    if (w(idx_h) < dry_threshold) {
      w(idx_h) = std::max(w(idx_h), 0.0);
      w(idx_q) = 0.0;
      for (int j = 1; j <= order; ++j) w(idx_moment(j)) = 0.0;
      w(idx_conc(order)) = 0.0;
    }
  }
}

long clamp_concentration(Field& field) {
  const int n = field.n_cells();
  const int order = field.order();
  long events = 0;
  for (int i = 0; i < n; ++i) {
    auto w = field.cell(i);
    const double h = w(idx_h);
    double& s = w(idx_conc(order));
    const double lo = 0.0;
    const double hi = std::max(h, 0.0);
    if (s < lo || s > hi) {
      s = std::clamp(s, lo, hi);
      ++events;
    }
  }
  return events;
}

namespace {

double cell_speed(const Primitives& prim, const SolverConfig& config,
                  const BasisTables& tables, const SedimentParams& params,
                  Eigen::MatrixXd& scratch) {
  if (!prim.wet) return 0.0;
  if (config.wave_speed == WaveSpeedMode::Bound)
    return wave_speed_bound(prim, params, config.dry_threshold);
  assemble_transport(scratch, prim, tables, params, config.matrix, config.dry_threshold);
  return max_wave_speed(scratch);
}

}  // namespace

void euler_stage(Field& out, const Field& in, double dt, const Mesh& mesh,
                 const SolverConfig& config, const BasisTables& tables,
                 const SedimentParams& params, StepStats* stats) {
  const int n = in.n_cells();
  const int order = in.order();
  const int m = in.width();
  const double lambda = dt / mesh.dx();

  if (stats) {
    stats->fluctuation_sum = Eigen::VectorXd::Zero(m);
    stats->source_sum = Eigen::VectorXd::Zero(m);
    stats->max_speed = 0.0;
    stats->ok = true;
    stats->bad_cell = -1;
  }

  std::vector<Primitives> prims(n + 2);
  std::vector<double> speeds(n + 2, 0.0);
  Eigen::MatrixXd scratch(m, m);
  for (int i = -1; i <= n; ++i) {
    prims[i + 1] = recover_primitives(in.cell(i), order, config.dry_threshold);
    speeds[i + 1] = cell_speed(prims[i + 1], config, tables, params, scratch);
    if (stats) stats->max_speed = std::max(stats->max_speed, speeds[i + 1]);
  }

  // Fluctuations D+- at the n+1 interfaces (i, i+1), i = -1..n-1. The
  // midpoint matrix uses the arithmetic-mean state; a dry neighbour
  // contributes zero speed so the wet side sets the viscosity.
  Eigen::MatrixXd mid_matrix(m, m);
  std::vector<Eigen::VectorXd> fluct_minus(n + 1), fluct_plus(n + 1);
  Eigen::VectorXd w_mid(m), jump(m), central(m);
  for (int i = -1; i < n; ++i) {
    const int e = i + 1;
    jump = in.cell(i + 1) - in.cell(i);
    w_mid = 0.5 * (in.cell(i) + in.cell(i + 1));
    const Primitives mid = recover_primitives(w_mid, order, config.dry_threshold);
    assemble_transport(mid_matrix, mid, tables, params, config.matrix,
                       config.dry_threshold);
    const double speed = std::max(speeds[i + 1], speeds[i + 2]);
    central = 0.5 * (mid_matrix * jump);
    fluct_minus[e] = central - 0.5 * speed * jump;
    fluct_plus[e] = central + 0.5 * speed * jump;
  }

  out.cell(-1) = in.cell(-1);
  out.cell(n) = in.cell(n);
  for (int i = 0; i < n; ++i) {
    const SourceVector src =
        source(prims[i + 1], tables, params, config.exchange_enabled());
    const Eigen::VectorXd total_fluct = fluct_plus[i] + fluct_minus[i + 1];
    const Eigen::VectorXd src_total = src.total();
    out.cell(i) = in.cell(i) - lambda * total_fluct + dt * src_total;
    if (stats) {
      stats->fluctuation_sum += total_fluct;
      stats->source_sum += src_total;
      if (!out.cell(i).allFinite()) {
        stats->ok = false;
        if (stats->bad_cell < 0) stats->bad_cell = i;
      }
    }
  }
}

Field step(const Field& field, double dt, const Mesh& mesh, const SolverConfig& config,
           const BasisTables& tables, const SedimentParams& params, StepStats* stats) {
  Field out(field.order(), field.n_cells());
  euler_stage(out, field, dt, mesh, config, tables, params, stats);
  return out;
}

double field_max_speed(const Field& field, const SolverConfig& config,
                       const BasisTables& tables, const SedimentParams& params) {
  const int m = field.width();
  Eigen::MatrixXd scratch(m, m);
  double speed = 0.0;
  for (int i = 0; i < field.n_cells(); ++i) {
    const Primitives prim =
        recover_primitives(field.cell(i), field.order(), config.dry_threshold);
    speed = std::max(speed, cell_speed(prim, config, tables, params, scratch));
  }
  return speed;
}

namespace {

void check_finite(const Field& field, double time) {
  for (int i = 0; i < field.n_cells(); ++i) {
    if (!field.cell(i).allFinite())
      throw SolverAbort("non-finite state", i, time, Eigen::VectorXd(field.cell(i)));
  }
}

/// Euler stage plus the per-update fixes, as one building block of the
/// SSP composition.
void stage(Field& out, Field& in, double dt, const Mesh& mesh, const SolverConfig& config,
           const BasisTables& tables, const SedimentParams& params, AdvanceStats& stats,
           double time) {
  apply_boundaries(in, config.boundary);
  StepStats step_stats;
  euler_stage(out, in, dt, mesh, config, tables, params, &step_stats);
  stats.max_speed_seen = std::max(stats.max_speed_seen, step_stats.max_speed);
  if (!step_stats.ok)
    throw SolverAbort("non-finite state after stage", step_stats.bad_cell, time,
                      Eigen::VectorXd(out.cell(step_stats.bad_cell)));
  if (config.wet_dry) wet_dry_fix(out, config.dry_threshold);
  stats.clamp_events += clamp_concentration(out);
}

}  // namespace

AdvanceStats advance(Field& field, const Mesh& mesh, const SolverConfig& config,
                     const BasisTables& tables, const SedimentParams& params,
                     const std::vector<double>& snapshot_times,
                     const std::function<void(double, const Field&)>& on_snapshot) {
  AdvanceStats stats;
  double t = 0.0;
  std::size_t next_snapshot = 0;

  auto emit_due = [&](double now) {
    while (next_snapshot < snapshot_times.size() &&
           snapshot_times[next_snapshot] <= now + 1e-12) {
      if (on_snapshot) on_snapshot(snapshot_times[next_snapshot], field);
      ++next_snapshot;
    }
  };
  emit_due(0.0);

  Field u1(field.order(), field.n_cells());
  Field u2(field.order(), field.n_cells());
  Field u3(field.order(), field.n_cells());
  Field u4(field.order(), field.n_cells());

  while (t < config.end_time - 1e-12) {
    double dt;
    if (config.fixed_dt) {
      dt = *config.fixed_dt;
    } else {
      const double speed = field_max_speed(field, config, tables, params);
      dt = speed > 0.0 ? config.cfl * mesh.dx() / speed : config.end_time - t;
    }
    dt = std::min(dt, config.end_time - t);
    if (next_snapshot < snapshot_times.size())
      dt = std::min(dt, snapshot_times[next_snapshot] - t);
    if (dt < 1e-12)
      throw SolverAbort("time step underflow", -1, t, Eigen::VectorXd());

    // SSPRK(4,3): three half-step Euler stages, a 2/3-1/3 convex
    // recombination, and a final half-step stage.
    stage(u1, field, 0.5 * dt, mesh, config, tables, params, stats, t);
    stage(u2, u1, 0.5 * dt, mesh, config, tables, params, stats, t);
    stage(u3, u2, 0.5 * dt, mesh, config, tables, params, stats, t);
    u3.raw() = (2.0 / 3.0) * field.raw() + (1.0 / 3.0) * u3.raw();
    if (config.wet_dry) wet_dry_fix(u3, config.dry_threshold);
    stats.clamp_events += clamp_concentration(u3);
    stage(u4, u3, 0.5 * dt, mesh, config, tables, params, stats, t);
    field.raw() = u4.raw();

    t += dt;
    ++stats.steps;
    check_finite(field, t);
    emit_due(t);
  }

  stats.min_h = 0.0;
  for (int i = 0; i < field.n_cells(); ++i)
    stats.min_h = (i == 0) ? field.at(i, idx_h)
                           : std::min(stats.min_h, field.at(i, idx_h));
  return stats;
}

}  // namespace swemed
