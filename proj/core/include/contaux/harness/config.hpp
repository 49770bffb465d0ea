#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contaux/optim/optimizer.hpp"

namespace contaux::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptimizerSpec {
  std::string kind = "auto";  // auto | sgd
  double meta_step = 0.04;
  double initial_step = 0.1;

  optim::OptimizerPtr make(std::size_t dim) const;
};

/// Flat experiment description; see README for the JSON keys.
struct ExperimentConfig {
  std::string environment = "tabular-tmaze";
  std::string behavior = "fixed";   // fixed | random | gpi | esarsa
  std::string learner = "sfnr";     // tb | tb-interest | etb | sfnr | lstd
  std::string sf_trace = "tb";      // trace rule of the SF-NR successor features
  OptimizerSpec optimizer;          // GVF learners
  std::optional<double> cumulant_initial_step;  // SF-NR regression, defaults to optimizer
  OptimizerSpec behavior_optimizer{"auto", 0.04, 0.1};
  double lambda = 0.9;
  double behavior_lambda = 0.9;
  double epsilon = 0.1;
  bool replay = false;
  int replay_capacity = 10000;
  int replay_batch = 4;
  bool interest = true;
  double etb_emphasis_clip = 0.0;
  double optimistic_threshold = 10.0;
  std::optional<double> step_penalty;
  double lstd_ridge = 1e-6;
  long steps = 0;       // 0 selects the environment default
  long eval_every = 0;  // 0 selects the environment default
  int runs = 30;
  std::uint64_t seed = 0;
  std::string weighting;  // empty selects by environment and behavior
  long pretrain_steps = 500000;
  int mc_rollouts = 100;
  long visitation_steps = 200000;
  std::string output_dir;

  /// Fills environment-dependent defaults and validates. Throws ConfigError.
  ExperimentConfig resolved() const;
  std::string to_json() const;
  /// Canonical JSON of the resolved config hashed with 64-bit FNV-1a.
  std::uint64_t hash() const;
};

/// Parses a flat JSON object; unknown keys are an error.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
/// Applies flat overrides (a JSON object) on top of `base`.
ExperimentConfig with_overrides(const ExperimentConfig& base, const std::string& overrides_json);

const std::vector<std::string>& learner_ids();
const std::vector<std::string>& behavior_ids();

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace contaux::harness
