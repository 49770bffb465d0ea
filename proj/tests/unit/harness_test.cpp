#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "contaux/harness/config.hpp"
#include "contaux/harness/experiment.hpp"
#include "contaux/harness/sweep.hpp"

namespace contaux::harness {
namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("contaux_harness_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig quick(const std::string& overrides = "{}") {
  auto c = parse_config(R"({"environment": "tabular-tmaze", "behavior": "fixed", "learner": "sfnr",
                            "steps": 2000, "eval_every": 100, "runs": 2, "seed": 3})");
  return with_overrides(c, overrides).resolved();
}

TEST(Config, UnknownKeyRejected) {
  EXPECT_THROW(parse_config(R"({"stpes": 10})"), ConfigError);
  EXPECT_THROW(parse_config("not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"steps": "many"})"), ConfigError);
}

TEST(Config, ValidationErrors) {
  EXPECT_THROW(parse_config(R"({"learner": "nope"})").resolved(), ConfigError);
  EXPECT_THROW(parse_config(R"({"environment": "nope"})").resolved(), ConfigError);
  EXPECT_THROW(parse_config(R"({"steps": -1})").resolved(), ConfigError);
  EXPECT_THROW(parse_config(R"({"runs": 0})").resolved(), ConfigError);
  EXPECT_THROW(parse_config(R"({"replay": true, "lambda": 0.9})").resolved(), ConfigError);
  EXPECT_THROW(parse_config(R"({"environment": "open-2d-world", "behavior": "fixed"})").resolved(), ConfigError);
  EXPECT_THROW(parse_config(R"({"optimizer": "adam"})").resolved(), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, EnvironmentDefaults) {
  const auto t = parse_config(R"({"environment": "tabular-tmaze"})").resolved();
  EXPECT_EQ(t.steps, 50000);
  EXPECT_EQ(t.eval_every, 100);
  EXPECT_EQ(t.weighting, "behavior");
  EXPECT_EQ(t.runs, 30);
  const auto c = parse_config(R"({"environment": "continuous-tmaze", "behavior": "gpi"})").resolved();
  EXPECT_EQ(c.steps, 100000);
  EXPECT_EQ(c.eval_every, 500);
  EXPECT_EQ(c.weighting, "uniform");
  const auto o = parse_config(R"({"environment": "open-2d-world", "behavior": "gpi"})").resolved();
  EXPECT_EQ(o.steps, 200000);
  EXPECT_EQ(o.weighting, "interest");
  const auto m = parse_config(R"({"environment": "mountain-car", "behavior": "random"})").resolved();
  EXPECT_EQ(m.weighting, "uniform-sa");
}

TEST(Config, RoundTripAndHash) {
  const auto c = quick();
  const auto again = parse_config(c.to_json()).resolved();
  EXPECT_EQ(c.to_json(), again.to_json());
  EXPECT_EQ(c.hash(), again.hash());
  EXPECT_NE(c.hash(), quick(R"({"lambda": 0.5})").hash());
  auto other_dir = c;
  other_dir.output_dir = "/elsewhere";
  EXPECT_EQ(c.hash(), other_dir.hash());
}

TEST(Config, ShippedConfigsResolve) {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(CONTAUX_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(load_config(entry.path().string()).resolved()) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 10);
}

TEST(Experiment, FixedSfnrShape) {
  const auto log = run_experiment(quick(), 1);
  EXPECT_EQ(log.gvf_names.size(), 4u);
  ASSERT_EQ(log.rows.size(), 20u);
  EXPECT_EQ(log.rows.back().step, 2000);
  EXPECT_EQ(log.rows.back().rmsve.size(), 4u);
  EXPECT_EQ(log.rows.back().visits.size(), 4u);
  EXPECT_EQ(log.config_hash, quick().hash());
}

TEST(Experiment, LogsAreMonotone) {
  for (const std::string behavior : {"fixed", "gpi", "esarsa", "random"}) {
    const auto log = run_experiment(quick(R"({"behavior": ")" + behavior + R"(", "weighting": "uniform"})"), 2);
    for (std::size_t i = 1; i < log.rows.size(); ++i) {
      ASSERT_GT(log.rows[i].step, log.rows[i - 1].step);
      ASSERT_GE(log.rows[i].te, log.rows[i - 1].te);
      for (std::size_t g = 0; g < log.rows[i].visits.size(); ++g) {
        ASSERT_GE(log.rows[i].visits[g], log.rows[i - 1].visits[g]);
      }
    }
  }
}

TEST(Experiment, PhaseOrderEveryStep) {
  std::vector<std::pair<long, Phase>> seen;
  RunHooks hooks;
  hooks.on_phase = [&seen](long t, Phase p) { seen.emplace_back(t, p); };
  const auto c = quick(R"({"behavior": "gpi", "weighting": "uniform", "steps": 300})");
  run_experiment(c, 4, {}, hooks);
  ASSERT_EQ(seen.size(), 300u * 5u);
  const std::array<Phase, 5> order{Phase::kAct, Phase::kObserve, Phase::kUpdateGvfs, Phase::kIntrinsicReward,
                                   Phase::kUpdateBehavior};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    ASSERT_EQ(seen[i].first, static_cast<long>(i / 5));
    ASSERT_EQ(seen[i].second, order[i % 5]);
  }
}

TEST(Experiment, DeterministicCsv) {
  const auto dir = scratch("determinism");
  const auto c = quick(R"({"behavior": "gpi", "weighting": "uniform"})");
  run_experiment(c, 9, (dir / "a.csv").string());
  run_experiment(c, 9, (dir / "b.csv").string());
  run_experiment(c, 10, (dir / "c.csv").string());
  const auto a = slurp(dir / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b.csv"));
  EXPECT_NE(a, slurp(dir / "c.csv"));
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
}

TEST(Experiment, CsvSchema) {
  const auto dir = scratch("schema");
  run_experiment(quick(), 1, (dir / "run.csv").string());
  std::ifstream in(dir / "run.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, csv_header(4, 4));
  EXPECT_EQ(header,
            "step,rmsve_gvf_1,rmsve_gvf_2,rmsve_gvf_3,rmsve_gvf_4,te,mean_intrinsic_reward,"
            "visits_goal_1,visits_goal_2,visits_goal_3,visits_goal_4");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 20);
  const auto meta = nlohmann::json::parse(slurp(dir / "run.json"));
  EXPECT_EQ(meta.at("seed").get<std::uint64_t>(), 1u);
  EXPECT_TRUE(meta.contains("config"));
}

TEST(Experiment, RunLogSummaries) {
  RunLog log;
  for (int i = 1; i <= 10; ++i) {
    LogRow r;
    r.step = i;
    r.rmsve = {static_cast<double>(i), 1.0};
    r.visits = {i, 2 * i};
    log.rows.push_back(r);
  }
  EXPECT_DOUBLE_EQ(log.final_rmsve(0.1), 11.0);
  EXPECT_DOUBLE_EQ(log.last_fraction_te(0.2), 9.0 + 1.0 + 10.0 + 1.0);
  EXPECT_DOUBLE_EQ(log.early_rmsve(0.2), (2.0 + 3.0) / 2.0);
  const auto v = log.visits_since(0.5);
  EXPECT_EQ(v[0], 5);
  EXPECT_EQ(v[1], 10);
}

TEST(Sweep, GridCells) {
  const auto g = parse_grid(R"({"meta_step": [0.1, 0.2], "lambda": [0, 0.5, 0.9]})");
  EXPECT_EQ(g.cells(), 6u);
  const auto first = nlohmann::json::parse(g.cell_overrides(0));
  EXPECT_EQ(first.size(), 2u);
  EXPECT_THROW(parse_grid(R"({"bogus": [1]})"), ConfigError);
  EXPECT_THROW(parse_grid(R"({"lambda": []})"), ConfigError);
}

TEST(Sweep, SingleCellWins) {
  const auto s = sweep(quick(), parse_grid(R"({"lambda": [0.5]})"), {});
  EXPECT_EQ(s.winner, 0u);
  EXPECT_EQ(s.cells.size(), 1u);
  EXPECT_EQ(s.cells[0].last_te.size(), 2u);
}

TEST(Sweep, ParallelMatchesSerial) {
  const auto grid = parse_grid(R"({"meta_step": [0.04, 0.2], "lambda": [0.0, 0.9]})");
  const auto a = scratch("serial");
  const auto b = scratch("parallel");
  const auto sa = sweep(quick(), grid, a.string(), 1);
  const auto sb = sweep(quick(), grid, b.string(), 3);
  EXPECT_EQ(sa.to_json(), sb.to_json());
  for (std::size_t k = 0; k < grid.cells(); ++k) {
    for (int r = 0; r < 2; ++r) {
      const auto rel = std::filesystem::path("cell_" + std::to_string(k)) / ("run_" + std::to_string(r) + ".csv");
      ASSERT_EQ(slurp(a / rel), slurp(b / rel)) << rel;
    }
  }
  std::ifstream csv(a / "summary.csv");
  int rows = -1;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, static_cast<int>(grid.cells()) * 2);
}

TEST(Sweep, SelectsPlantedStepSize) {
  const auto grid = parse_grid(R"({"initial_step": [0.1, 10.0]})");
  int correct = 0;
  for (std::uint64_t group = 0; group < 30; ++group) {
    auto c = quick(R"({"optimizer": "sgd", "learner": "tb", "runs": 1, "steps": 1000})");
    c.seed = 100 + group;
    if (sweep(c, grid, {}).winner == 0) ++correct;
  }
  EXPECT_GE(correct, 28);
}

}  // namespace
}  // namespace contaux::harness
