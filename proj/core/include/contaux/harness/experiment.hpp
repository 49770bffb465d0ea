#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "contaux/harness/config.hpp"

namespace contaux::harness {

struct LogRow {
  long step = 0;
  std::vector<double> rmsve;  // per GVF
  double te = 0.0;            // running sum of every logged RMSVE
  double mean_intrinsic_reward = 0.0;
  std::vector<long> visits;   // cumulative goal entries
};

struct RunLog {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::vector<std::string> gvf_names;
  std::vector<LogRow> rows;

  /// Sum of RMSVEs over the last round(fraction * rows) evaluations.
  double last_fraction_te(double fraction = 0.1) const;
  /// Mean over the last round(fraction * rows) rows of RMSVE summed over GVFs.
  double final_rmsve(double fraction = 0.1) const;
  /// Mean of the summed RMSVE over the first `fraction` of evaluations.
  double early_rmsve(double fraction = 0.25) const;
  /// Goal entries between the row at `from_fraction` of the run and the end.
  std::vector<long> visits_since(double from_fraction) const;
};

/// Loop phases, reported in order to RunHooks::on_phase.
enum class Phase { kAct, kObserve, kUpdateGvfs, kIntrinsicReward, kUpdateBehavior };

struct RunHooks {
  std::function<void(long step, Phase phase)> on_phase;
};

/// CSV header for `num_gvfs` GVFs and `num_goals` goals.
std::string csv_header(std::size_t num_gvfs, std::size_t num_goals);
std::string csv_row(const LogRow& row);

/// Runs the multi-prediction loop for one seed. When `csv_path` is non-empty
/// rows are appended as they are produced and a `.json` sidecar is written.
RunLog run_experiment(const ExperimentConfig& config, std::uint64_t seed, const std::string& csv_path = {},
                      const RunHooks& hooks = {});

/// Seed of run `index` under the config's master seed.
std::uint64_t run_seed(std::uint64_t master, int index);

}  // namespace contaux::harness
