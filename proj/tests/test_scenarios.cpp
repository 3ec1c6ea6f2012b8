#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "swemed/scenarios.hpp"

using namespace swemed;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("swemed_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Scenario tiny_scenario() {
  Scenario s = builtin("academic");
  s.name = "tiny";
  s.n_cells = 40;
  s.end_time = 0.02;
  s.order = 1;
  s.output.snapshot_count = 3;
  s.output.profile_stations = {0.0};
  return s;
}

}  // namespace

TEST_CASE("builtin registry") {
  const Scenario academic = builtin("academic");
  CHECK(academic.n_cells == 1200);
  CHECK(academic.x_left == -6.0);
  CHECK(academic.x_right == 6.0);
  CHECK(academic.order == 3);
  CHECK(academic.end_time == 1.0);
  CHECK(academic.params.rho_s == 1580.0);
  CHECK(academic.params.d_s == doctest::Approx(0.0039));
  CHECK(academic.params.eps == 0.0324);
  CHECK(academic.params.theta_c == 0.047);
  CHECK(academic.params.psi == 0.47);
  CHECK(academic.h0(-1.0) == 1.0);
  CHECK(academic.h0(0.0) == 1.0);  // the step keeps the left value at x = 0
  CHECK(academic.h0(0.5) == 0.05);
  CHECK(academic.hb0(2.0) == 0.0);

  const Scenario c1 = builtin("config1-pvc");
  CHECK(c1.n_cells == 1000);
  CHECK(c1.order == 1);
  CHECK(c1.wet_dry);
  CHECK(c1.h0(-1.0) == 0.35);
  CHECK(c1.h0(1.0) == 0.0);

  const Scenario c2s = builtin("config2-sand");
  CHECK(c2s.params.rho_s == 2683.0);
  CHECK(c2s.params.d_s == doctest::Approx(0.00182));
  CHECK(c2s.hb0(-1.0) == 0.10);
  CHECK(c2s.hb0(1.0) == 0.0);

  const Scenario c3 = builtin("config3-sand");
  CHECK(c3.params.eps == 0.0104);
  CHECK(c3.order == 3);
  CHECK(c3.h0(2.0) == 0.10);

  CHECK_THROWS_AS(builtin("config9"), ValidationError);
  try {
    builtin("config9");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("config1-pvc") != std::string::npos);
  }
}

TEST_CASE("config loading round trip") {
  const fs::path dir = temp_dir("roundtrip");
  const fs::path cfg = dir / "academic.json";
  {
    std::ofstream out(cfg);
    out << R"({
      "name": "academic",
      "domain": {"x_left": -6.0, "x_right": 6.0},
      "n_cells": 1200,
      "end_time": 1.0,
      "order": 3,
      "model": "hswemed",
      "params": {"rho_w": 1000, "rho_s": 1580, "theta_c": 0.047, "psi": 0.47,
                 "d_s_mm": 3.9, "eps": 0.0324},
      "initial": {
        "h": {"type": "step", "x0": 0.0, "left": 1.0, "right": 0.05},
        "h_b": {"type": "uniform", "value": 0.0}
      },
      "output": {"profile_stations": [-2, -1, 0, 1, 2, 3]}
    })";
  }
  const Scenario loaded = load_config(cfg);
  const Scenario ref = builtin("academic");
  CHECK(loaded.n_cells == ref.n_cells);
  CHECK(loaded.order == ref.order);
  CHECK(loaded.end_time == ref.end_time);
  CHECK(loaded.params.rho_s == ref.params.rho_s);
  CHECK(loaded.params.d_s == doctest::Approx(ref.params.d_s).epsilon(1e-15));
  CHECK(loaded.params.c_D == doctest::Approx(ref.params.c_D).epsilon(1e-15));
  CHECK(loaded.params.D_sg == doctest::Approx(ref.params.D_sg).epsilon(1e-15));
  CHECK(loaded.h0.x0 == ref.h0.x0);
  CHECK(loaded.h0.left == ref.h0.left);
  CHECK(loaded.h0.right == ref.h0.right);
  CHECK(loaded.output.profile_stations == ref.output.profile_stations);
}

TEST_CASE("config validation errors") {
  const fs::path dir = temp_dir("validation");

  auto write_and_load = [&](const std::string& tag, const std::string& body) {
    const fs::path cfg = dir / (tag + ".json");
    std::ofstream(cfg) << body;
    return load_config(cfg);
  };

  // negative initial depth
  CHECK_THROWS_AS(write_and_load("negh", R"({
    "initial": {"h": {"type": "uniform", "value": -0.5}}
  })"),
                  ValidationError);

  // unknown key
  CHECK_THROWS_AS(write_and_load("unknown", R"({"n_cellz": 100})"), ValidationError);

  // malformed JSON
  CHECK_THROWS_AS(write_and_load("parse", R"({"n_cells": )"), ValidationError);

  // sweed with moments
  CHECK_THROWS_AS(write_and_load("sweed", R"({"model": "sweed", "order": 2})"),
                  ValidationError);

  // omega override accepted
  const Scenario s = write_and_load("omega", R"({
    "overrides": {"omega_o": 0.5714}
  })");
  REQUIRE(s.params.omega_o_override.has_value());
  CHECK(*s.params.omega_o_override == 0.5714);
  CHECK(settling_velocity(s.params) == 0.5714);
}

TEST_CASE("run writes the documented directory layout") {
  const fs::path dir = temp_dir("run");
  const Scenario s = tiny_scenario();
  const RunResult result = run_scenario(s, dir / "out");
  REQUIRE_FALSE(result.aborted);

  CHECK(fs::exists(dir / "out" / "manifest.json"));
  CHECK(fs::exists(dir / "out" / "energy.csv"));
  CHECK(fs::exists(dir / "out" / "froude.csv"));
  CHECK(fs::exists(dir / "out" / "snapshots" / "t_0.000000.csv"));
  CHECK(fs::exists(dir / "out" / "snapshots" / "t_0.020000.csv"));
  CHECK(fs::exists(dir / "out" / "profiles" / "t_0.020000_x_0.000000.csv"));

  // snapshot structure: header + one strictly increasing x row per cell
  const std::string snap = slurp(dir / "out" / "snapshots" / "t_0.020000.csv");
  CHECK(snap.rfind("x,h,h_plus_hb,h_b,u_m,alpha_1,c_m,u_b,froude\n", 0) == 0);
  int lines = 0;
  for (char ch : snap)
    if (ch == '\n') ++lines;
  CHECK(lines == s.n_cells + 1);
}

TEST_CASE("manifest reruns are byte-identical") {
  const fs::path dir = temp_dir("determinism");
  const Scenario s = tiny_scenario();
  const RunResult first = run_scenario(s, dir / "a");
  REQUIRE_FALSE(first.aborted);

  const Scenario reloaded = load_config(dir / "a" / "manifest.json");
  const RunResult second = run_scenario(reloaded, dir / "b");
  REQUIRE_FALSE(second.aborted);

  for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), dir / "a");
    CAPTURE(rel.string());
    CHECK(slurp(entry.path()) == slurp(dir / "b" / rel));
  }
}

TEST_CASE("compare against references") {
  const fs::path dir = temp_dir("compare");
  const Scenario s = tiny_scenario();
  const RunResult result = run_scenario(s, dir / "out");
  REQUIRE_FALSE(result.aborted);

  // self-comparison: extract h from the final snapshot as the reference
  {
    const std::string snap = slurp(dir / "out" / "snapshots" / "t_0.020000.csv");
    std::ofstream ref(dir / "self.csv");
    ref << "x,value\n";
    std::istringstream in(snap);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      ref << line.substr(0, c1) << ',' << line.substr(c1 + 1, c2 - c1 - 1) << '\n';
    }
  }
  const CompareResult self = compare_with_reference(dir / "out", dir / "self.csv", "h");
  CHECK(self.l1 <= 1e-14);
  CHECK(self.linf <= 1e-14);

  // constant offset against the untouched initial bed: Linf equals the offset
  {
    std::ofstream ref(dir / "offset.csv");
    ref << "x,value\n-6,2.0\n6,2.0\n";
  }
  const CompareResult offset =
      compare_with_reference(dir / "out", dir / "offset.csv", "h_b", 0.0);
  CHECK(offset.linf == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(offset.l1 == doctest::Approx(2.0).epsilon(1e-12));

  // unknown field and empty reference
  CHECK_THROWS_AS(compare_with_reference(dir / "out", dir / "self.csv", "zeta"),
                  ValidationError);
  std::ofstream(dir / "empty.csv") << "x,value\n";
  CHECK_THROWS_AS(compare_with_reference(dir / "out", dir / "empty.csv", "h"),
                  ValidationError);
}

TEST_CASE("dry cells stay dry until the front arrives") {
  Scenario s = builtin("config1-pvc");
  s.name = "tiny-front";
  s.n_cells = 120;
  s.end_time = 0.05;
  s.output.snapshot_count = 2;
  s.wave_speed = WaveSpeedMode::Bound;
  const fs::path dir = temp_dir("front");
  const RunResult result = run_scenario(s, dir / "out");
  REQUIRE_FALSE(result.aborted);

  // front cannot have travelled past x = 2 sqrt(g h_L) t
  const double reach = 2.0 * std::sqrt(9.81 * 0.35) * s.end_time;
  const std::string snap = slurp(dir / "out" / "snapshots" / "t_0.050000.csv");
  std::istringstream in(snap);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const double x = std::stod(line.substr(0, line.find(',')));
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double h = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    if (x > reach + 0.2) CHECK(h == 0.0);
  }
}
