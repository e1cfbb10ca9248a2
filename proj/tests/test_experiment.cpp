#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "dwlab/experiment.hpp"

using namespace dwlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / "dwlab_tests" / name;
  fs::remove_all(d);
  fs::create_directories(d.parent_path());
  return d;
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("empty config yields the documented defaults") {
    auto cfg = config_from_json_text("{}");
    CHECK(cfg.dim == 2);
    CHECK(cfg.alpha == 1.0);
    CHECK(cfg.a0 == 1.0);
    CHECK(cfg.eps == 0.1);
    CHECK(!cfg.damping_bump.has_value());
    CHECK(cfg.grid.r0 == 1.0);
    CHECK(cfg.grid.r_max == 205.0);
    CHECK(cfg.grid.n == 4001);
    CHECK(cfg.data.center == 3.0);
    CHECK(cfg.data.width == 1.0);
    CHECK(cfg.time.cfl == 0.5);
    CHECK(cfg.time.T == 200.0);
    CHECK(cfg.time.sample_count == 120);
    CHECK(cfg.heat.T == 500.0);
    CHECK(cfg.heat.dt == 0.01);
    CHECK(cfg.duhamel.t == 8.0);
    CHECK(cfg.duhamel.dt_quad == 0.5);
    CHECK(cfg.tol.cor2 == 0.08);
    CHECK(cfg.tol.heat == 0.06);
    CHECK(cfg.tol.thm1_gap == 0.45);
    CHECK(cfg.tol.support == 1e-12);
    CHECK(cfg.output_dir == "out");
    CHECK(cfg.checks.empty());
    CHECK_NOTHROW(validate_config(cfg));
  }

  TEST_CASE("partial config keeps the rest at defaults") {
    auto cfg = config_from_json_text(R"({"N": 3, "alpha": 2.0, "grid": {"r_max": 50.0}})");
    CHECK(cfg.dim == 3);
    CHECK(cfg.alpha == 2.0);
    CHECK(cfg.grid.r_max == 50.0);
    CHECK(cfg.grid.r0 == 1.0);
    CHECK(cfg.eps == 0.1);
  }

  TEST_CASE("malformed json is a parse error") {
    CHECK_THROWS_AS(config_from_json_text("{"), ParseError);
    CHECK_THROWS_AS(config_from_json_text(""), ParseError);
    CHECK_THROWS_AS(config_from_json_text("[1, 2]"), ParseError);
    CHECK_THROWS_AS(load_config("/nonexistent/dwlab.json"), ParseError);
  }

  TEST_CASE("unknown keys are rejected with their path") {
    try {
      config_from_json_text(R"({"alfa": 1.0})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.field == "alfa");
    }
    try {
      config_from_json_text(R"({"grid": {"rmax": 10.0}})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.field == "grid.rmax");
    }
    try {
      config_from_json_text(R"({"sweep": {"n": [1, 2]}})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.field == "sweep.n");
    }
  }

  TEST_CASE("inadmissible values are validation errors with their path") {
    try {
      config_from_json_text(R"({"eps": 0.5})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.field == "eps");
    }
    CHECK_THROWS_AS(config_from_json_text(R"({"alpha": -1.0})"), ValidationError);
    CHECK_THROWS_AS(config_from_json_text(R"({"N": 1})"), ValidationError);
    CHECK_THROWS_AS(config_from_json_text(R"({"grid": {"n": 4}})"), ValidationError);
    CHECK_THROWS_AS(config_from_json_text(R"({"time": {"cfl": 0.9}})"), ValidationError);
    CHECK_THROWS_AS(config_from_json_text(R"({"fit": {"t_lo": 0.5}})"), ValidationError);
    CHECK_THROWS_AS(config_from_json_text(R"({"alpha": "one"})"), ValidationError);
  }

  TEST_CASE("check names are validated against the registry") {
    CHECK_THROWS_AS(config_from_json_text(R"({"checks": ["no_such_check"]})"), ValidationError);
    CHECK_NOTHROW(config_from_json_text(R"({"checks": ["support", "hardy"]})"));
    const auto& reg = check_registry();
    CHECK(reg.count("support") == 1);
    CHECK(reg.count("hardy") == 1);
    CHECK(reg.count("weight_verify") == 1);
    CHECK(reg.count("duhamel") == 1);
    CHECK(reg.count("transform_isometry") == 1);
  }

  TEST_CASE("output dir resolution prefers the environment") {
    auto cfg = config_from_json_text(R"({"output_dir": "cfg_dir"})");
    unsetenv("DWLAB_OUTPUT_DIR");
    CHECK(resolve_output_dir(cfg) == "cfg_dir");
    setenv("DWLAB_OUTPUT_DIR", "env_dir", 1);
    CHECK(resolve_output_dir(cfg) == "env_dir");
    unsetenv("DWLAB_OUTPUT_DIR");
  }

  TEST_CASE("weight run writes deterministic artifacts") {
    unsetenv("DWLAB_OUTPUT_DIR");
    auto dir1 = fresh_dir("weight_a");
    auto dir2 = fresh_dir("weight_b");
    std::ostringstream cfgtext;
    cfgtext << R"({"grid": {"r0": 1.0, "r_max": 120.0, "n": 2381}, "output_dir": ")"
            << dir1.string() << R"("})";
    auto cfg = config_from_json_text(cfgtext.str());
    auto art = run_weight(cfg);
    CHECK(art.all_pass);
    CHECK(fs::exists(dir1 / "weight.csv"));
    CHECK(fs::exists(dir1 / "verdicts.json"));
    bool saw_verify = false, saw_tail = false;
    for (const auto& c : art.checks) {
      if (c.name == "weight_verify") saw_verify = c.pass;
      if (c.name == "weight_tail") saw_tail = c.pass;
    }
    CHECK(saw_verify);
    CHECK(saw_tail);

    cfg.output_dir = dir2.string();
    run_weight(cfg);
    CHECK(slurp(dir1 / "weight.csv") == slurp(dir2 / "weight.csv"));
    CHECK(slurp(dir1 / "verdicts.json") == slurp(dir2 / "verdicts.json"));
  }

  TEST_CASE("compare run emits energies, verdicts and plots") {
    unsetenv("DWLAB_OUTPUT_DIR");
    auto dir = fresh_dir("compare_small");
    std::ostringstream cfgtext;
    cfgtext << R"({
      "grid": {"r0": 1.0, "r_max": 26.0, "n": 501},
      "time": {"T": 20.0, "sample_count": 40, "cfl": 0.45},
      "fit": {"t_lo": 2.0, "t_hi": 20.0},
      "checks": ["support", "hardy", "monotonicity_e1", "appfps", "weight_verify"],
      "output_dir": ")"
            << dir.string() << R"("})";
    auto art = run_compare(config_from_json_text(cfgtext.str()));
    CHECK(art.all_pass);

    CHECK(fs::exists(dir / "energy.csv"));
    CHECK(fs::exists(dir / "verdicts.json"));
    CHECK(fs::exists(dir / "decay_u.svg"));
    CHECK(fs::exists(dir / "decay_diff.svg"));
    CHECK(fs::exists(dir / "energy_rates.svg"));

    auto header = slurp(dir / "energy.csv").substr(0, 200);
    CHECK(header.find("t,") == 0);
    CHECK(header.find("E_dx") != std::string::npos);
    CHECK(header.find("E_a") != std::string::npos);
    CHECK(header.find("hardy_margin") != std::string::npos);

    bool support_pass = false;
    for (const auto& c : art.checks) {
      if (c.name == "support") support_pass = c.pass;
    }
    CHECK(support_pass);

    // Only the requested checks gate; five were requested.
    CHECK(art.checks.size() >= 5);
  }

  TEST_CASE("transform check passes in the enhancement regime") {
    unsetenv("DWLAB_OUTPUT_DIR");
    auto dir = fresh_dir("transform_small");
    std::ostringstream cfgtext;
    cfgtext << R"({"N": 3, "alpha": 2.0, "grid": {"r0": 1.0, "r_max": 21.0, "n": 4096},
                   "output_dir": ")"
            << dir.string() << R"("})";
    auto art = run_transform_check(config_from_json_text(cfgtext.str()));
    CHECK(art.all_pass);
    CHECK(fs::exists(dir / "psi0.csv"));
    CHECK(fs::exists(dir / "verdicts.json"));
  }

  TEST_CASE("duhamel run reconstructs within tolerance") {
    unsetenv("DWLAB_OUTPUT_DIR");
    auto dir = fresh_dir("duhamel_small");
    std::ostringstream cfgtext;
    cfgtext << R"({
      "duhamel": {"t": 4.0, "dt_quad": 0.5, "dt_heat": 0.02, "r_max": 10.0, "n": 361,
                   "dt_wave": 0.0125},
      "output_dir": ")"
            << dir.string() << R"("})";
    auto art = run_duhamel(config_from_json_text(cfgtext.str()));
    CHECK(art.all_pass);
    CHECK(fs::exists(dir / "duhamel.csv"));
    bool t0_exact = false;
    for (const auto& c : art.checks) {
      if (c.name == "duhamel_t0") {
        t0_exact = c.pass && c.value == 0.0;
      }
    }
    CHECK(t0_exact);
  }

  TEST_CASE("wave run needs room for the cone") {
    auto cfg = config_from_json_text(
        R"({"grid": {"r0": 1.0, "r_max": 30.0, "n": 581}, "time": {"T": 40.0}})");
    CHECK_THROWS_AS(run_wave(cfg), ValidationError);
  }
}
