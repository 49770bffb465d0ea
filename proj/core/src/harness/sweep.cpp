#include "contaux/harness/sweep.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "contaux/oracle/metrics.hpp"

namespace contaux::harness {

using nlohmann::json;

std::size_t SweepGrid::cells() const {
  std::size_t n = 1;
  for (const auto& [key, values] : axes) n *= values.size();
  return axes.empty() ? 1 : n;
}

std::string SweepGrid::cell_overrides(std::size_t index) const {
  json j = json::object();
  for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
    const auto& values = it->second;
    j[it->first] = json::parse(values[index % values.size()]);
    index /= values.size();
  }
  return j.dump();
}

SweepGrid parse_grid(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid grid JSON: ") + e.what());
  }
  if (!j.is_object() || j.empty()) throw ConfigError("grid must be a non-empty JSON object");
  SweepGrid grid;
  for (const auto& [key, values] : j.items()) {
    if (!values.is_array() || values.empty()) throw ConfigError("grid axis '" + key + "' must be a non-empty array");
    std::vector<std::string> dumped;
    for (const auto& v : values) dumped.push_back(v.dump());
    grid.axes.emplace_back(key, std::move(dumped));
  }
  // Reject unknown keys early.
  with_overrides(ExperimentConfig{}, grid.cell_overrides(0));
  return grid;
}

SweepGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grid '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_grid(ss.str());
}

std::string SweepSummary::to_json() const {
  json j;
  j["winner"] = winner;
  j["cells"] = json::array();
  for (const auto& c : cells) {
    json cell;
    cell["overrides"] = json::parse(c.overrides);
    cell["last_te"] = c.last_te;
    cell["mean_last_te"] = c.mean_last_te;
    cell["se_last_te"] = c.se_last_te;
    j["cells"].push_back(cell);
  }
  return j.dump(2);
}

SweepSummary sweep(const ExperimentConfig& config, const SweepGrid& grid, const std::string& out_dir, int jobs) {
  const std::size_t cells = grid.cells();
  if (cells == 0) throw ConfigError("empty grid");
  std::vector<ExperimentConfig> configs;
  SweepSummary summary;
  for (std::size_t k = 0; k < cells; ++k) {
    configs.push_back(with_overrides(config, grid.cell_overrides(k)).resolved());
    SweepCell cell;
    cell.overrides = grid.cell_overrides(k);
    cell.last_te.assign(static_cast<std::size_t>(configs.back().runs), 0.0);
    summary.cells.push_back(std::move(cell));
  }

  struct Task {
    std::size_t cell;
    int run;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < cells; ++k) {
    for (int r = 0; r < configs[k].runs; ++r) tasks.push_back({k, r});
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& task = tasks[i];
      try {
        std::string path;
        if (!out_dir.empty()) {
          path = out_dir + "/cell_" + std::to_string(task.cell) + "/run_" + std::to_string(task.run) + ".csv";
        }
        const RunLog log = run_experiment(configs[task.cell], run_seed(configs[task.cell].seed, task.run), path);
        summary.cells[task.cell].last_te[static_cast<std::size_t>(task.run)] = log.last_fraction_te();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t k = 0; k < cells; ++k) {
    auto& cell = summary.cells[k];
    cell.mean_last_te = oracle::mean(cell.last_te);
    cell.se_last_te = oracle::standard_error(cell.last_te);
    // Diverged cells (non-finite TE) never win.
    const double best = summary.cells[summary.winner].mean_last_te;
    if (std::isfinite(cell.mean_last_te) && (!std::isfinite(best) || cell.mean_last_te < best)) summary.winner = k;
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir + "/summary.json") << summary.to_json() << '\n';
    std::ofstream csv(out_dir + "/summary.csv");
    csv << "cell,overrides,run,last_te\n";
    for (std::size_t k = 0; k < cells; ++k) {
      std::string ov = summary.cells[k].overrides;
      std::string quoted = "\"";
      for (char ch : ov) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      quoted += "\"";
      for (std::size_t r = 0; r < summary.cells[k].last_te.size(); ++r) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g", summary.cells[k].last_te[r]);
        csv << k << ',' << quoted << ',' << r << ',' << buf << '\n';
      }
    }
  }
  return summary;
}

}  // namespace contaux::harness
