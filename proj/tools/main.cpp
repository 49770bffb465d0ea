#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>

#include "contaux/envs/environment.hpp"
#include "contaux/harness/config.hpp"
#include "contaux/harness/experiment.hpp"
#include "contaux/harness/sweep.hpp"
#include "contaux/oracle/checks.hpp"

namespace {

using namespace contaux;
using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json lemma1_report(int trials, std::uint64_t seed, bool& ok) {
  const auto start = std::chrono::steady_clock::now();
  RngStream rng(seed, Stream::kEvaluation);
  const auto r = oracle::check_lemma1(trials, rng);
  ok = ok && r.passed();
  return {{"check", "lemma1"}, {"trials", r.trials},        {"violations", r.violations},
          {"max_ratio", r.max_ratio}, {"tolerance", r.tolerance}, {"passed", r.passed()},
          {"seconds", seconds_since(start)}};
}

json prop1_report(int seeds, std::uint64_t seed, bool& ok) {
  const auto start = std::chrono::steady_clock::now();
  RngStream rng(seed, Stream::kEvaluation);
  oracle::Prop1Options options;
  options.seeds = seeds;
  const auto r = oracle::check_prop1(options, rng);
  ok = ok && r.passed();
  return {{"check", "prop1"},
          {"horizons", r.horizons},
          {"median_error", r.median_error},
          {"scaled_error", r.scaled_error},
          {"loglog_slope", r.loglog_slope},
          {"scaled_slope", r.scaled_slope},
          {"rho_max", r.rho_max},
          {"seeds", r.seeds},
          {"monotone", r.monotone},
          {"passed", r.passed()},
          {"seconds", seconds_since(start)}};
}

json appc_report(int instances, std::uint64_t seed, bool& ok) {
  json cases = json::array();
  for (int c = 1; c <= 3; ++c) {
    const auto start = std::chrono::steady_clock::now();
    RngStream rng(seed + static_cast<std::uint64_t>(c), Stream::kEvaluation);
    const auto r = oracle::check_appc(c, instances, rng);
    ok = ok && r.passed();
    cases.push_back({{"case", c},
                     {"instances", r.instances},
                     {"max_gap", r.max_gap},
                     {"min_gap", r.min_gap},
                     {"passed", r.passed()},
                     {"seconds", seconds_since(start)}});
  }
  return {{"check", "appc"}, {"cases", cases}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continual auxiliary-task learning workbench"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment configuration");
  std::string config_path;
  std::string out_dir;
  std::uint64_t run_seed_value = 0;
  run->add_option("--config", config_path, "Experiment JSON")->required();
  auto* seed_opt = run->add_option("--seed", run_seed_value, "Run seed (default: every run of the config)");
  run->add_option("--out", out_dir, "Output directory")->required();

  auto* sw = app.add_subcommand("sweep", "Sweep a hyperparameter grid");
  std::string grid_path;
  int jobs = 1;
  sw->add_option("--config", config_path, "Experiment JSON")->required();
  sw->add_option("--grid", grid_path, "Grid JSON: key -> list of values")->required();
  sw->add_option("--out", out_dir, "Output directory")->required();
  sw->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* oc = app.add_subcommand("oracle-check", "Numeric checks of the theory");
  std::string check = "all";
  int trials = 0;
  std::uint64_t check_seed = 1;
  oc->add_option("--check", check, "Which check")->check(CLI::IsMember({"lemma1", "prop1", "appc", "all"}));
  oc->add_option("--trials", trials, "Trials (lemma1), seeds (prop1) or instances per case (appc)")
      ->check(CLI::NonNegativeNumber);
  oc->add_option("--seed", check_seed, "Seed");

  auto* list = app.add_subcommand("list", "List environments, learners and behaviors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::cout << "environments:";
      for (const auto& id : envs::environment_ids()) std::cout << ' ' << id;
      std::cout << "\nlearners:";
      for (const auto& id : harness::learner_ids()) std::cout << ' ' << id;
      std::cout << "\nbehaviors:";
      for (const auto& id : harness::behavior_ids()) std::cout << ' ' << id;
      std::cout << '\n';
      return 0;
    }
    if (oc->parsed()) {
      bool ok = true;
      json report = json::array();
      if (check == "lemma1" || check == "all") report.push_back(lemma1_report(trials ? trials : 1000, check_seed, ok));
      if (check == "prop1" || check == "all") report.push_back(prop1_report(trials ? trials : 30, check_seed, ok));
      if (check == "appc" || check == "all") report.push_back(appc_report(trials ? trials : 100, check_seed, ok));
      std::cout << (report.size() == 1 ? report[0] : report).dump(2) << '\n';
      return ok ? 0 : 1;
    }

    const harness::ExperimentConfig config = harness::load_config(config_path).resolved();
    if (run->parsed()) {
      std::filesystem::create_directories(out_dir);
      if (seed_opt->count() > 0) {
        const auto path = out_dir + "/seed_" + std::to_string(run_seed_value) + ".csv";
        const auto log = harness::run_experiment(config, run_seed_value, path);
        std::cout << path << " last10_te=" << log.last_fraction_te() << '\n';
      } else {
        for (int r = 0; r < config.runs; ++r) {
          const auto path = out_dir + "/run_" + std::to_string(r) + ".csv";
          const auto log = harness::run_experiment(config, harness::run_seed(config.seed, r), path);
          std::cout << path << " last10_te=" << log.last_fraction_te() << '\n';
        }
      }
      return 0;
    }
    if (sw->parsed()) {
      const auto grid = harness::load_grid(grid_path);
      const auto summary = harness::sweep(config, grid, out_dir, jobs);
      const auto& best = summary.cells[summary.winner];
      std::cout << "winner cell " << summary.winner << ' ' << best.overrides << " mean_last10_te=" << best.mean_last_te
                << " se=" << best.se_last_te << '\n';
      return 0;
    }
  } catch (const harness::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
