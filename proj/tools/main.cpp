// Command line front end: parses the config, dispatches to one experiment
// driver, prints verdicts and checks, and maps failures to exit codes
// 0 = all checks pass, 1 = a check or verdict failed, 2 = parse error,
// 3 = validation error, 4 = runtime failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dwlab/experiment.hpp"

namespace {

using dwlab::ExperimentConfig;
using dwlab::RunArtifact;

void print_artifact(const RunArtifact& art) {
  for (const auto& v : art.verdicts) {
    std::printf("[%s] %-16s slope %+0.4f (stderr %.4f)  target -%.4f  tol %.3g\n",
                v.pass ? "PASS" : "FAIL", v.quantity.c_str(), v.fitted_slope, v.stderr_,
                v.target, v.tol);
  }
  for (const auto& c : art.checks) {
    std::printf("[%s] %-16s value %.6e  threshold %.6e  %s\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.value, c.threshold, c.detail.c_str());
  }
  std::printf("%s -> %s\n", art.out_dir.c_str(), art.all_pass ? "all checks passed" : "FAILURES");
}

bool files_identical(const std::string& a, const std::string& b) {
  std::ifstream fa(a, std::ios::binary);
  std::ifstream fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::string ca((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
  std::string cb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
  return ca == cb;
}

// Runs the driver twice, the second time into a scratch directory, and
// demands byte-identical artifacts.
bool seed_check(const ExperimentConfig& cfg, const RunArtifact& first,
                const std::function<RunArtifact(const ExperimentConfig&)>& driver) {
  ExperimentConfig again = cfg;
  again.output_dir = first.out_dir + ".recheck";
#if !defined(_WIN32)
  unsetenv("DWLAB_OUTPUT_DIR");  // the rerun must not collapse onto the first directory
#endif
  RunArtifact second = driver(again);
  bool ok = first.files.size() == second.files.size();
  for (size_t i = 0; ok && i < first.files.size(); ++i) {
    ok = files_identical(first.out_dir + "/" + first.files[i],
                         second.out_dir + "/" + second.files[i]);
    if (!ok) {
      std::printf("[FAIL] determinism       %s differs between reruns\n",
                  first.files[i].c_str());
    }
  }
  std::filesystem::remove_all(second.out_dir);
  if (ok) {
    std::printf("[PASS] determinism       %zu artifacts byte-identical across reruns\n",
                first.files.size());
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for waves with growing damping"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  bool run_seed_check = false;
  app.add_option("-c,--config", config_path, "JSON config file (defaults apply if omitted)");
  app.add_option("-o,--output-dir", output_dir, "override the output directory");
  app.add_flag("--seed-check", run_seed_check,
               "run twice and verify the artifacts are byte-identical");

  std::map<std::string, std::function<RunArtifact(const ExperimentConfig&)>> drivers = {
      {"weight", dwlab::run_weight},
      {"wave", dwlab::run_wave},
      {"heat", dwlab::run_heat},
      {"compare", dwlab::run_compare},
      {"transform-check", dwlab::run_transform_check},
      {"duhamel", dwlab::run_duhamel},
      {"sweep", dwlab::run_sweep},
  };
  std::map<std::string, std::string> blurbs = {
      {"weight", "assemble and verify the auxiliary weight"},
      {"wave", "evolve the damped wave equation"},
      {"heat", "evolve the damping-scaled heat equation"},
      {"compare", "wave vs heat decay comparison with weighted energies"},
      {"transform-check", "isometry and conjugation checks for the half-line transform"},
      {"duhamel", "reconstruct the wave tail from heat semigroup integrals"},
      {"sweep", "run a compare grid over alpha and eps"},
  };
  for (const auto& [name, fn] : drivers) {
    app.add_subcommand(name, blurbs[name])->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string mode = app.get_subcommands().front()->get_name();
  try {
    ExperimentConfig cfg =
        config_path.empty() ? ExperimentConfig{} : dwlab::load_config(config_path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    dwlab::validate_config(cfg);

    const auto& driver = drivers.at(mode);
    RunArtifact art = driver(cfg);
    print_artifact(art);

    bool ok = art.all_pass;
    if (run_seed_check) {
      ExperimentConfig clean = cfg;
      clean.output_dir = art.out_dir;  // freeze the resolved directory
      ok = seed_check(clean, art, driver) && ok;
    }
    return ok ? 0 : 1;
  } catch (const dwlab::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const dwlab::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return 4;
  }
}
