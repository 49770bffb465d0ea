#pragma once

#include <map>
#include <string>
#include <vector>

#include "contaux/harness/experiment.hpp"

namespace contaux::harness {

/// Flat key -> candidate values (each value any JSON scalar, stored as JSON text).
struct SweepGrid {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;

  std::size_t cells() const;
  /// JSON object of the overrides of cell `index` (row-major over axes).
  std::string cell_overrides(std::size_t index) const;
};

SweepGrid parse_grid(const std::string& json_text);
SweepGrid load_grid(const std::string& path);

struct SweepCell {
  std::string overrides;
  std::vector<double> last_te;  // per run
  double mean_last_te = 0.0;
  double se_last_te = 0.0;
};

struct SweepSummary {
  std::vector<SweepCell> cells;
  std::size_t winner = 0;
  std::string to_json() const;
};

/// Runs every grid cell for config.runs seeds and selects the lowest mean
/// last-10% TE. Per-run CSVs go to out_dir/cell_<k>/run_<r>.csv when out_dir
/// is non-empty. `jobs` > 1 runs (cell, seed) pairs on worker threads.
SweepSummary sweep(const ExperimentConfig& config, const SweepGrid& grid, const std::string& out_dir, int jobs = 1);

}  // namespace contaux::harness
