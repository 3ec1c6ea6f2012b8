// Command-line front end: scenario runs, hyperbolicity sweeps, and
// comparison of run output against reference profiles.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "swemed/scenarios.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolverAbort = 3;

swemed::Scenario resolve_scenario(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path))
    return swemed::load_config(name_or_path);
  return swemed::builtin(name_or_path);
}

int cmd_run(const std::string& target, const std::string& model, int order, int nx,
            double t_end, double dt, double cfl, const std::string& out,
            const std::string& matrix, bool seed_sweep) {
  swemed::Scenario scenario = resolve_scenario(target);

  if (!model.empty()) {
    if (model == "sweed") {
      scenario.model = swemed::ModelVariant::Sweed;
      scenario.order = 0;
    } else if (model == "hswem") {
      scenario.model = swemed::ModelVariant::Hswem;
    } else if (model == "hswemed") {
      scenario.model = swemed::ModelVariant::Hswemed;
    } else {
      throw swemed::ValidationError("unknown model '" + model + "'");
    }
    scenario.defaults_applied.push_back("model overridden on the command line");
  }
  if (order >= 0) scenario.order = order;
  if (nx > 0) scenario.n_cells = nx;
  if (t_end > 0) scenario.end_time = t_end;
  if (dt > 0) {
    scenario.fixed_dt = dt;
    scenario.cfl.reset();
  }
  if (cfl > 0) {
    scenario.cfl = cfl;
    scenario.fixed_dt.reset();
  }
  if (!matrix.empty()) {
    if (matrix == "full")
      scenario.matrix = swemed::MatrixKind::Full;
    else if (matrix == "regularized")
      scenario.matrix = swemed::MatrixKind::Regularized;
    else
      throw swemed::ValidationError("unknown matrix kind '" + matrix + "'");
  }

  std::filesystem::path out_dir = out.empty() ? ("runs/" + scenario.name) : out;
  const swemed::RunResult result = swemed::run_scenario(scenario, out_dir, seed_sweep);

  if (result.aborted) {
    std::cerr << "solver abort: " << result.abort_reason << "\n"
              << "partial outputs kept in " << result.dir.string() << "\n";
    return kExitSolverAbort;
  }
  std::cout << "run complete: " << result.dir.string() << "\n"
            << "  steps=" << result.stats.steps
            << " clamp_events=" << result.stats.clamp_events
            << " min_h=" << result.min_h_final << "\n";
  return 0;
}

int cmd_spectral_sweep(int order, int samples, const std::string& material,
                       const std::string& matrix, unsigned seed, const std::string& out) {
  swemed::SedimentParams params =
      material == "sand" ? swemed::sand_params() : swemed::pvc_params();
  const swemed::MatrixKind kind =
      matrix == "full" ? swemed::MatrixKind::Full : swemed::MatrixKind::Regularized;
  const swemed::BasisTables tables(order);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uh(1e-3, 2.0), uu(-5.0, 5.0), ua(-2.0, 2.0),
      uc(0.0, 0.3);

  std::ostringstream csv;
  csv << "h,u_m";
  for (int i = 1; i <= order; ++i) csv << ",alpha_" << i;
  csv << ",c_m,max_imag,radius\n";

  const int m = swemed::state_size(order);
  Eigen::MatrixXd a(m, m);
  long violations = 0;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    swemed::Primitives prim;
    prim.order = order;
    prim.wet = true;
    prim.h = uh(rng);
    prim.u_m = uu(rng);
    prim.alpha.setZero(order);
    for (int i = 0; i < order; ++i) prim.alpha(i) = ua(rng);
    prim.c_m = uc(rng);
    swemed::assemble_transport(a, prim, tables, params, kind, 1e-4);
    const swemed::Spectrum sp = swemed::eigenvalues(a);
    if (!sp.real_within(1e-8)) ++violations;
    worst = std::max(worst, sp.max_imag / std::max(sp.radius, 1e-300));
    csv << prim.h << ',' << prim.u_m;
    for (int i = 0; i < order; ++i) csv << ',' << prim.alpha(i);
    csv << ',' << prim.c_m << ',' << sp.max_imag << ',' << sp.radius << '\n';
  }

  if (!out.empty()) {
    std::ofstream f(out);
    f << csv.str();
  }
  std::cout << "spectral sweep: order=" << order << " material=" << material
            << " matrix=" << (kind == swemed::MatrixKind::Full ? "full" : "regularized")
            << " samples=" << samples << "\n  complex-spectrum states: " << violations
            << " (worst imag/radius " << worst << ")\n";
  return 0;
}

int cmd_compare(const std::string& run_dir, const std::string& reference,
                const std::string& field, double time) {
  std::optional<double> t;
  if (time >= 0) t = time;
  const swemed::CompareResult r =
      swemed::compare_with_reference(run_dir, reference, field, t);
  std::printf("field %s vs %s over %d points\n", field.c_str(), reference.c_str(),
              r.points);
  std::printf("  L1   %.8g\n  Linf %.8g\n  RMS  %.8g\n", r.l1, r.linf, r.rms);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled shallow-water moment / Exner sediment transport solver"};
  app.require_subcommand(1);

  // run
  std::string target, model, out, matrix;
  int order = -1, nx = -1;
  double t_end = -1, dt = -1, cfl = -1;
  bool seed_sweep = false;
  auto* run = app.add_subcommand("run", "run a builtin scenario or a config file");
  run->add_option("scenario", target, "builtin name or config path")->required();
  run->add_option("--model", model, "sweed|hswem|hswemed");
  run->add_option("--order", order, "moment order N");
  run->add_option("--nx", nx, "cell count");
  run->add_option("--t-end", t_end, "end time [s]");
  run->add_option("--dt", dt, "fixed time step [s]");
  run->add_option("--cfl", cfl, "CFL number in (0,1]");
  run->add_option("--out", out, "output directory");
  run->add_option("--matrix", matrix, "full|regularized");
  run->add_flag("--seed-sweep", seed_sweep, "also dump per-cell spectra seeded by the run");

  // spectral-sweep
  int sw_order = 3, sw_samples = 1000;
  unsigned sw_seed = 42;
  std::string sw_material = "pvc", sw_matrix = "regularized", sw_out;
  auto* sweep = app.add_subcommand("spectral-sweep", "hyperbolicity map over random states");
  sweep->add_option("--order", sw_order, "moment order N");
  sweep->add_option("--samples", sw_samples, "number of random states");
  sweep->add_option("--material", sw_material, "pvc|sand");
  sweep->add_option("--matrix", sw_matrix, "full|regularized");
  sweep->add_option("--seed", sw_seed, "RNG seed");
  sweep->add_option("--out", sw_out, "CSV output path");

  // compare
  std::string cmp_run, cmp_ref, cmp_field;
  double cmp_time = -1;
  auto* cmp = app.add_subcommand("compare", "error table of a run against a reference CSV");
  cmp->add_option("run_dir", cmp_run, "run directory")->required();
  cmp->add_option("reference", cmp_ref, "reference CSV with columns x,value")->required();
  cmp->add_option("--field", cmp_field, "snapshot column name")->required();
  cmp->add_option("--time", cmp_time, "snapshot time (default: final)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(target, model, order, nx, t_end, dt, cfl, out, matrix, seed_sweep);
    if (sweep->parsed())
      return cmd_spectral_sweep(sw_order, sw_samples, sw_material, sw_matrix, sw_seed, sw_out);
    if (cmp->parsed()) return cmd_compare(cmp_run, cmp_ref, cmp_field, cmp_time);
  } catch (const swemed::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const swemed::SolverAbort& e) {
    std::cerr << "solver abort: " << e.what() << "\n";
    return kExitSolverAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
