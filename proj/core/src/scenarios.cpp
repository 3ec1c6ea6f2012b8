#include "swemed/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

namespace swemed {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_time(double t) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", t);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

const std::map<std::string, ModelVariant> kModelNames = {
    {"sweed", ModelVariant::Sweed},
    {"hswem", ModelVariant::Hswem},
    {"hswemed", ModelVariant::Hswemed}};
const std::map<std::string, MatrixKind> kMatrixNames = {
    {"full", MatrixKind::Full}, {"regularized", MatrixKind::Regularized}};
const std::map<std::string, WaveSpeedMode> kSpeedNames = {
    {"eigensolve", WaveSpeedMode::Eigensolve}, {"bound", WaveSpeedMode::Bound}};
const std::map<std::string, BoundaryPolicy> kBoundaryNames = {
    {"zero-gradient", BoundaryPolicy::ZeroGradient}, {"periodic", BoundaryPolicy::Periodic}};

template <class T>
std::string name_of(const std::map<std::string, T>& names, T value) {
  for (const auto& [k, v] : names)
    if (v == value) return k;
  return "?";
}

template <class T>
T parse_enum(const std::map<std::string, T>& names, const std::string& text,
             const std::string& what) {
  auto it = names.find(text);
  if (it == names.end()) {
    std::string valid;
    for (const auto& [k, v] : names) valid += (valid.empty() ? "" : ", ") + k;
    throw ValidationError("unknown " + what + " '" + text + "' (valid: " + valid + ")");
  }
  return it->second;
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

InitialProfile parse_profile(const json& j, const std::string& where) {
  InitialProfile p;
  reject_unknown_keys(j, {"type", "value", "x0", "left", "right"}, where);
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") {
    p.kind = InitialProfile::Kind::Uniform;
    p.value = j.at("value").get<double>();
  } else if (type == "step") {
    p.kind = InitialProfile::Kind::Step;
    p.x0 = j.at("x0").get<double>();
    p.left = j.at("left").get<double>();
    p.right = j.at("right").get<double>();
  } else {
    throw ValidationError(where + ": unknown profile type '" + type + "'");
  }
  return p;
}

json profile_json(const InitialProfile& p) {
  if (p.kind == InitialProfile::Kind::Uniform)
    return json{{"type", "uniform"}, {"value", p.value}};
  return json{{"type", "step"}, {"x0", p.x0}, {"left", p.left}, {"right", p.right}};
}

void require_nonnegative_profile(const InitialProfile& p, const std::string& what) {
  const bool ok = p.kind == InitialProfile::Kind::Uniform
                      ? p.value >= 0.0
                      : (p.left >= 0.0 && p.right >= 0.0);
  if (!ok) throw ValidationError("initial " + what + " must be nonnegative");
}

}  // namespace

void Scenario::validate() const {
  if (!(x_right > x_left)) throw ValidationError("domain must satisfy x_right > x_left");
  if (n_cells < 1) throw ValidationError("n_cells must be >= 1");
  if (!(end_time > 0.0)) throw ValidationError("end_time must be positive");
  if (order < 0) throw ValidationError("order must be >= 0");
  if (model == ModelVariant::Sweed && order != 0)
    throw ValidationError("the sweed model implies order 0");
  if (fixed_dt && !(*fixed_dt > 0.0)) throw ValidationError("dt must be positive");
  if (cfl && !(*cfl > 0.0 && *cfl <= 1.0)) throw ValidationError("cfl must lie in (0,1]");
  if (fixed_dt && cfl) throw ValidationError("give either dt or cfl, not both");
  if (!(dry_threshold > 0.0)) throw ValidationError("dry_threshold must be positive");
  if (output.snapshot_count < 2 && output.snapshot_times.empty())
    throw ValidationError("need at least two snapshots");
  if (output.profile_points < 2) throw ValidationError("profile_points must be >= 2");
  for (double t : output.snapshot_times)
    if (t < 0.0 || t > end_time + 1e-12)
      throw ValidationError("snapshot times must lie in [0, end_time]");
  require_nonnegative_profile(h0, "h");
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

std::vector<std::string> builtin_names() {
  return {"academic",     "config1-pvc", "config1-sand", "config2-pvc",
          "config2-sand", "config3-pvc", "config3-sand"};
}

Scenario builtin(const std::string& name) {
  Scenario s;
  s.name = name;

  const bool sand = name.size() > 5 && name.substr(name.size() - 5) == "-sand";
  s.params = sand ? sand_params() : pvc_params();

  if (name == "academic") {
    s.x_left = -6.0;
    s.x_right = 6.0;
    s.n_cells = 1200;
    s.end_time = 1.0;
    s.order = 3;
    s.wet_dry = false;
    s.h0 = {InitialProfile::Kind::Step, 0.0, 0.0, 1.0, 0.05};
    s.hb0 = {InitialProfile::Kind::Uniform, 0.0, 0.0, 0.0, 0.0};
    s.output.profile_stations = {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
  } else if (name == "config1-pvc" || name == "config1-sand") {
    s.x_left = -3.0;
    s.x_right = 3.0;
    s.n_cells = 1000;
    s.end_time = 1.0;
    s.order = 1;
    s.wet_dry = true;
    s.h0 = {InitialProfile::Kind::Step, 0.0, 0.0, 0.35, 0.0};
    s.hb0 = {InitialProfile::Kind::Uniform, 0.0, 0.0, 0.0, 0.0};
  } else if (name == "config2-pvc" || name == "config2-sand") {
    s.x_left = -3.0;
    s.x_right = 3.0;
    s.n_cells = 1000;
    s.end_time = 1.0;
    s.order = 1;
    s.wet_dry = true;
    s.h0 = {InitialProfile::Kind::Step, 0.0, 0.0, 0.25, 0.0};
    s.hb0 = {InitialProfile::Kind::Step, 0.0, 0.0, 0.10, 0.0};
  } else if (name == "config3-pvc" || name == "config3-sand") {
    s.x_left = -3.0;
    s.x_right = 3.0;
    s.n_cells = 1000;
    s.end_time = 1.0;
    s.order = 3;
    s.wet_dry = false;
    s.h0 = {InitialProfile::Kind::Step, 0.0, 0.0, 0.25, 0.10};
    s.hb0 = {InitialProfile::Kind::Step, 0.0, 0.0, 0.10, 0.0};
  } else {
    std::string valid;
    for (const auto& n : builtin_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ValidationError("unknown scenario '" + name + "' (valid: " + valid + ")");
  }
  return s;
}

Scenario load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("parse error in " + path.string() + ": " + e.what());
  }

  reject_unknown_keys(
      j,
      {"name", "domain", "n_cells", "end_time", "order", "model", "matrix", "wave_speed",
       "boundary", "wet_dry", "dry_threshold", "params", "overrides", "initial", "dt",
       "cfl", "output", "meta"},
      "config");

  Scenario s;
  s.name = j.value("name", path.stem().string());

  try {
    if (j.contains("domain")) {
      reject_unknown_keys(j["domain"], {"x_left", "x_right"}, "domain");
      s.x_left = j["domain"].at("x_left").get<double>();
      s.x_right = j["domain"].at("x_right").get<double>();
    }
    s.n_cells = j.value("n_cells", s.n_cells);
    s.end_time = j.value("end_time", s.end_time);
    s.order = j.value("order", s.order);
    if (j.contains("model")) s.model = parse_enum(kModelNames, j["model"], "model");
    if (j.contains("matrix")) s.matrix = parse_enum(kMatrixNames, j["matrix"], "matrix");
    if (j.contains("wave_speed"))
      s.wave_speed = parse_enum(kSpeedNames, j["wave_speed"], "wave_speed");
    if (j.contains("boundary"))
      s.boundary = parse_enum(kBoundaryNames, j["boundary"], "boundary");
    s.wet_dry = j.value("wet_dry", s.wet_dry);
    s.dry_threshold = j.value("dry_threshold", s.dry_threshold);

    if (j.contains("params")) {
      const json& p = j["params"];
      reject_unknown_keys(p,
                          {"rho_w", "rho_s", "theta_c", "psi", "d_s_mm", "eps", "D_sg_mm",
                           "nu", "nu_w", "c_D", "g"},
                          "params");
      s.params.rho_w = p.value("rho_w", s.params.rho_w);
      s.params.rho_s = p.value("rho_s", s.params.rho_s);
      s.params.theta_c = p.value("theta_c", s.params.theta_c);
      s.params.psi = p.value("psi", s.params.psi);
      if (p.contains("d_s_mm")) s.params.d_s = p["d_s_mm"].get<double>() * 1e-3;
      s.params.eps = p.value("eps", s.params.eps);
      s.params.c_D = p.value("c_D", s.params.eps);
      s.params.D_sg = p.contains("D_sg_mm") ? p["D_sg_mm"].get<double>() * 1e-3 : s.params.d_s;
      s.params.nu = p.value("nu", s.params.nu);
      s.params.nu_w = p.value("nu_w", s.params.nu_w);
      s.params.g = p.value("g", s.params.g);
    }
    if (j.contains("overrides")) {
      reject_unknown_keys(j["overrides"], {"omega_o"}, "overrides");
      if (j["overrides"].contains("omega_o"))
        s.params.omega_o_override = j["overrides"]["omega_o"].get<double>();
    }
    if (j.contains("initial")) {
      reject_unknown_keys(j["initial"], {"h", "h_b"}, "initial");
      if (j["initial"].contains("h")) s.h0 = parse_profile(j["initial"]["h"], "initial.h");
      if (j["initial"].contains("h_b"))
        s.hb0 = parse_profile(j["initial"]["h_b"], "initial.h_b");
    }
    if (j.contains("dt")) s.fixed_dt = j["dt"].get<double>();
    if (j.contains("cfl")) s.cfl = j["cfl"].get<double>();
    if (j.contains("output")) {
      const json& o = j["output"];
      reject_unknown_keys(
          o, {"snapshot_count", "snapshot_times", "profile_stations", "profile_points"},
          "output");
      s.output.snapshot_count = o.value("snapshot_count", s.output.snapshot_count);
      if (o.contains("snapshot_times"))
        s.output.snapshot_times = o["snapshot_times"].get<std::vector<double>>();
      if (o.contains("profile_stations"))
        s.output.profile_stations = o["profile_stations"].get<std::vector<double>>();
      s.output.profile_points = o.value("profile_points", s.output.profile_points);
    }
  } catch (const json::exception& e) {
    throw ValidationError("invalid config " + path.string() + ": " + e.what());
  }

  s.validate();
  return s;
}

Field initial_field(const Scenario& scenario) {
  Field field(scenario.order, scenario.n_cells);
  const Mesh mesh = scenario.mesh();
  for (int i = 0; i < scenario.n_cells; ++i) {
    const double x = mesh.center(i);
    field.at(i, idx_h) = scenario.h0(x);
    field.at(i, idx_bed(scenario.order)) = scenario.hb0(x);
  }
  apply_boundaries(field, scenario.boundary);
  return field;
}

double default_fixed_dt(const Scenario& scenario) {
  const Field field = initial_field(scenario);
  double speed = 0.0;
  for (int i = 0; i < field.n_cells(); ++i) {
    const Primitives prim =
        recover_primitives(field.cell(i), scenario.order, scenario.dry_threshold);
    speed = std::max(speed, wave_speed_bound(prim, scenario.params, scenario.dry_threshold));
  }
  if (speed <= 0.0) speed = std::sqrt(scenario.params.g);
  return 0.2 * scenario.mesh().dx() / (2.0 * speed);
}

std::vector<double> snapshot_times(const Scenario& scenario) {
  if (!scenario.output.snapshot_times.empty()) {
    auto times = scenario.output.snapshot_times;
    std::sort(times.begin(), times.end());
    return times;
  }
  std::vector<double> times;
  const int count = scenario.output.snapshot_count;
  for (int k = 0; k < count; ++k)
    times.push_back(scenario.end_time * k / (count - 1));
  times.back() = scenario.end_time;
  return times;
}

namespace {

SolverConfig solver_config(const Scenario& s) {
  SolverConfig c;
  c.end_time = s.end_time;
  c.dry_threshold = s.dry_threshold;
  c.model = s.model;
  c.matrix = s.matrix;
  c.wave_speed = s.wave_speed;
  c.boundary = s.boundary;
  c.wet_dry = s.wet_dry;
  if (s.cfl)
    c.cfl = *s.cfl;
  else
    c.fixed_dt = s.fixed_dt ? *s.fixed_dt : default_fixed_dt(s);
  return c;
}

json manifest_json(const Scenario& s, const SolverConfig& config,
                   const std::vector<double>& times, const RunResult& result) {
  json j;
  j["name"] = s.name;
  j["domain"] = {{"x_left", s.x_left}, {"x_right", s.x_right}};
  j["n_cells"] = s.n_cells;
  j["end_time"] = s.end_time;
  j["order"] = s.order;
  j["model"] = name_of(kModelNames, s.model);
  j["matrix"] = name_of(kMatrixNames, s.matrix);
  j["wave_speed"] = name_of(kSpeedNames, s.wave_speed);
  j["boundary"] = name_of(kBoundaryNames, s.boundary);
  j["wet_dry"] = s.wet_dry;
  j["dry_threshold"] = s.dry_threshold;
  j["params"] = {{"rho_w", s.params.rho_w},       {"rho_s", s.params.rho_s},
                 {"theta_c", s.params.theta_c},   {"psi", s.params.psi},
                 {"d_s_mm", s.params.d_s * 1e3},  {"eps", s.params.eps},
                 {"D_sg_mm", s.params.D_sg * 1e3},{"nu", s.params.nu},
                 {"nu_w", s.params.nu_w},         {"c_D", s.params.c_D},
                 {"g", s.params.g}};
  if (s.params.omega_o_override)
    j["overrides"] = {{"omega_o", *s.params.omega_o_override}};
  j["initial"] = {{"h", profile_json(s.h0)}, {"h_b", profile_json(s.hb0)}};
  if (config.fixed_dt)
    j["dt"] = *config.fixed_dt;
  else
    j["cfl"] = config.cfl;
  j["output"] = {{"snapshot_times", times},
                 {"profile_stations", s.output.profile_stations},
                 {"profile_points", s.output.profile_points}};

  json meta;
  meta["defaults_applied"] = s.defaults_applied;
  meta["assumptions"] = json::array({"end_time interpreted in seconds",
                                     "particle sizes in config files are millimetres"});
  meta["settling_velocity"] = settling_velocity(s.params);
  meta["bradford_factor"] = bradford_factor(s.params);
  meta["characteristic_discharge"] = characteristic_discharge(s.params);
  meta["energy_order"] = std::min(s.order, 1);
  meta["d_s_m"] = s.params.d_s;
  meta["D_sg_m"] = s.params.D_sg;
  meta["aborted"] = result.aborted;
  if (result.aborted) meta["abort_reason"] = result.abort_reason;
  meta["steps"] = result.stats.steps;
  meta["clamp_events"] = result.stats.clamp_events;
  j["meta"] = meta;
  return j;
}

std::string snapshot_csv(const Field& field, const Mesh& mesh, const Scenario& s) {
  const int order = field.order();
  std::ostringstream out;
  out << "x,h,h_plus_hb,h_b,u_m";
  for (int i = 1; i <= order; ++i) out << ",alpha_" << i;
  out << ",c_m,u_b,froude\n";
  for (int i = 0; i < field.n_cells(); ++i) {
    const Primitives prim = recover_primitives(field.cell(i), order, s.dry_threshold);
    out << fmt(mesh.center(i)) << ',' << fmt(prim.h) << ',' << fmt(prim.h + prim.h_b)
        << ',' << fmt(prim.h_b) << ',' << fmt(prim.u_m);
    for (int k = 1; k <= order; ++k) out << ',' << fmt(prim.wet ? prim.alpha(k - 1) : 0.0);
    out << ',' << fmt(prim.c_m) << ',' << fmt(prim.u_b()) << ','
        << fmt(froude(prim, s.params)) << '\n';
  }
  return out.str();
}

std::string profile_csv(const Primitives& prim, const Scenario& s,
                        const ScaledLegendre& poly) {
  const double sb = bradford_factor(s.params);
  std::ostringstream out;
  out << "zeta,u,c\n";
  for (int k = 0; k < s.output.profile_points; ++k) {
    const double zeta = double(k) / (s.output.profile_points - 1);
    out << fmt(zeta) << ',' << fmt(velocity_profile(prim, poly, zeta)) << ','
        << fmt(concentration_profile(prim.c_m, sb, zeta)) << '\n';
  }
  return out.str();
}

std::string spectra_csv(const Field& field, const Mesh& mesh, const Scenario& s,
                        const BasisTables& tables) {
  const int order = field.order();
  std::ostringstream out;
  out << "x";
  for (int k = 0; k < state_size(order); ++k) out << ",lambda_" << (k + 1);
  out << ",max_imag\n";
  Eigen::MatrixXd matrix(state_size(order), state_size(order));
  for (int i = 0; i < field.n_cells(); ++i) {
    const Primitives prim = recover_primitives(field.cell(i), order, s.dry_threshold);
    assemble_transport(matrix, prim, tables, s.params, s.matrix, s.dry_threshold);
    const Spectrum sp = eigenvalues(matrix);
    out << fmt(mesh.center(i));
    for (double v : sp.values) out << ',' << fmt(v);
    out << ',' << fmt(sp.max_imag) << '\n';
  }
  return out.str();
}

}  // namespace

RunResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir,
                       bool dump_spectra) {
  scenario.validate();
  const Mesh mesh = scenario.mesh();
  const BasisTables tables(std::max(scenario.order, 1));
  const SolverConfig config = solver_config(scenario);
  const std::vector<double> times = snapshot_times(scenario);

  std::filesystem::create_directories(out_dir / "snapshots");
  if (!scenario.output.profile_stations.empty())
    std::filesystem::create_directories(out_dir / "profiles");
  if (dump_spectra) std::filesystem::create_directories(out_dir / "spectra");

  Field field = initial_field(scenario);

  RunResult result;
  result.dir = out_dir;

  const int energy_order = std::min(scenario.order, 1);
  std::ostringstream energy;
  energy << "t,total_energy,boundary_flux,dissipation,density_coupling,residual\n";
  std::ostringstream froude_rows;
  froude_rows << "t,x,froude\n";

  std::optional<Field> prev_snapshot;
  double prev_time = 0.0;

  auto emit = [&](double t, const Field& f) {
    write_atomic(out_dir / "snapshots" / ("t_" + fmt_time(t) + ".csv"),
                 snapshot_csv(f, mesh, scenario));
    for (int i = 0; i < f.n_cells(); ++i) {
      const Primitives prim = recover_primitives(f.cell(i), f.order(), scenario.dry_threshold);
      froude_rows << fmt(t) << ',' << fmt(mesh.center(i)) << ','
                  << fmt(froude(prim, scenario.params)) << '\n';
    }
    if (prev_snapshot && t > prev_time) {
      const EnergyBudget budget = energy_residual(
          *prev_snapshot, f, t - prev_time, mesh, scenario.params, energy_order,
          config.exchange_enabled(), scenario.boundary, scenario.dry_threshold);
      energy << fmt(t) << ',' << fmt(budget.total_energy) << ','
             << fmt(budget.boundary_flux) << ',' << fmt(budget.dissipation) << ','
             << fmt(budget.density_coupling) << ',' << fmt(budget.residual) << '\n';
    } else {
      double total = 0.0;
      for (int i = 0; i < f.n_cells(); ++i) {
        const Primitives prim =
            recover_primitives(f.cell(i), f.order(), scenario.dry_threshold);
        total += (energy_order >= 1 ? energy_density_1(prim, scenario.params)
                                    : energy_density_0(prim, scenario.params)) *
                 mesh.dx();
      }
      energy << fmt(t) << ',' << fmt(total) << ",0,0,0,0\n";
    }
    if (dump_spectra)
      write_atomic(out_dir / "spectra" / ("t_" + fmt_time(t) + ".csv"),
                   spectra_csv(f, mesh, scenario, tables));
    prev_snapshot = f;
    prev_time = t;
  };

  try {
    result.stats = advance(field, mesh, config, tables, scenario.params, times, emit);
  } catch (const SolverAbort& abort) {
    result.aborted = true;
    result.abort_reason = std::string(abort.what()) + " at t=" + fmt(abort.time) +
                          " cell=" + std::to_string(abort.cell);
  }

  if (!result.aborted && !scenario.output.profile_stations.empty()) {
    const ScaledLegendre& poly = tables.polynomials();
    for (double station : scenario.output.profile_stations) {
      int i = int((station - scenario.x_left) / mesh.dx());
      i = std::clamp(i, 0, scenario.n_cells - 1);
      const Primitives prim =
          recover_primitives(field.cell(i), field.order(), scenario.dry_threshold);
      write_atomic(out_dir / "profiles" /
                       ("t_" + fmt_time(scenario.end_time) + "_x_" + fmt_time(station) + ".csv"),
                   profile_csv(prim, scenario, poly));
    }
  }

  write_atomic(out_dir / "energy.csv", energy.str());
  write_atomic(out_dir / "froude.csv", froude_rows.str());

  result.min_h_final = 0.0;
  for (int i = 0; i < field.n_cells(); ++i)
    result.min_h_final =
        i == 0 ? field.at(i, idx_h) : std::min(result.min_h_final, field.at(i, idx_h));

  write_atomic(out_dir / "manifest.json",
               manifest_json(scenario, config, times, result).dump(2) + "\n");
  return result;
}

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (first) {
      first = false;
      bool numeric = true;
      std::vector<std::string> cells;
      while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
        char* end = nullptr;
        std::strtod(cell.c_str(), &end);
        if (end == cell.c_str()) numeric = false;
      }
      if (!numeric) {
        table.header = cells;
        continue;
      }
      std::vector<double> row;
      for (const auto& c : cells) row.push_back(std::stod(c));
      table.rows.push_back(std::move(row));
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

CompareResult compare_with_reference(const std::filesystem::path& run_dir,
                                     const std::filesystem::path& reference_csv,
                                     const std::string& field,
                                     std::optional<double> time) {
  const auto snap_dir = run_dir / "snapshots";
  if (!std::filesystem::is_directory(snap_dir))
    throw ValidationError("no snapshots directory under " + run_dir.string());

  std::filesystem::path chosen;
  double best = -1.0;
  for (const auto& entry : std::filesystem::directory_iterator(snap_dir)) {
    const std::string stem = entry.path().stem().string();
    if (stem.rfind("t_", 0) != 0) continue;
    const double t = std::stod(stem.substr(2));
    if (time ? std::abs(t - *time) < 1e-9 : t > best) {
      best = t;
      chosen = entry.path();
      if (time) break;
    }
  }
  if (chosen.empty()) throw ValidationError("no matching snapshot found");

  const Table snap = read_csv(chosen);
  auto col = std::find(snap.header.begin(), snap.header.end(), field);
  if (col == snap.header.end())
    throw ValidationError("field '" + field + "' not present in snapshot columns");
  const std::size_t ci = col - snap.header.begin();

  const Table ref = read_csv(reference_csv);
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : ref.rows) {
    if (row.size() < 2) throw ValidationError("reference rows need x,value");
    pts.emplace_back(row[0], row[1]);
  }
  if (pts.empty()) throw ValidationError("reference file is empty");
  std::sort(pts.begin(), pts.end());

  auto interp = [&](double x) {
    if (x <= pts.front().first) return pts.front().second;
    if (x >= pts.back().first) return pts.back().second;
    auto hi = std::lower_bound(pts.begin(), pts.end(), std::make_pair(x, -1e300));
    auto lo = hi - 1;
    const double w = (x - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
  };

  CompareResult r;
  double sum = 0.0, sum2 = 0.0;
  for (const auto& row : snap.rows) {
    const double err = std::abs(row[ci] - interp(row[0]));
    sum += err;
    sum2 += err * err;
    r.linf = std::max(r.linf, err);
    ++r.points;
  }
  if (r.points == 0) throw ValidationError("snapshot has no rows");
  r.l1 = sum / r.points;
  r.rms = std::sqrt(sum2 / r.points);
  return r;
}

}  // namespace swemed
