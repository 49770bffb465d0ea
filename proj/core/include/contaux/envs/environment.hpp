#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contaux/features/encoder.hpp"
#include "contaux/gvf.hpp"
#include "contaux/rng.hpp"
#include "contaux/types.hpp"

namespace contaux::envs {

struct StepOutcome {
  Observation s_next;
  std::optional<int> goal_hit;
  double behavior_discount = 1.0;  // 0 when the behavior episode ends
  std::vector<double> cumulants;   // per GVF
  std::vector<double> discounts;   // per GVF

  bool terminal() const { return behavior_discount == 0.0; }
};

/// Feature constructions an environment ships with.
struct FeatureSet {
  features::EncoderPtr state;           // x(s, a) for GVF learners and behavior SFs
  features::EncoderPtr behavior_reward; // x(s, a) reward features for GPI
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string id() const = 0;
  virtual int num_actions() const = 0;
  virtual int num_goals() const = 0;

  virtual Observation reset(RngStream& rng) const = 0;
  /// Dynamics only (no goal bookkeeping). Throws on an invalid action.
  virtual Observation move(const Observation& s, ActionId a, RngStream& rng) const = 0;
  /// Move with the dynamics noise switched off.
  virtual Observation nominal_move(const Observation& s, ActionId a) const = 0;
  virtual std::optional<int> goal_at(const Observation& s) const = 0;
  virtual bool stochastic_dynamics() const = 0;

  /// GVF questions in goal order. Constants are drawn from `constants_rng`.
  virtual std::vector<GvfQuestion> gvf_suite(RngStream& constants_rng) const = 0;
  virtual FeatureSet features() const = 0;
  /// Per-step penalty added to the behavior's intrinsic reward.
  virtual double step_penalty() const = 0;
  virtual double gamma() const = 0;

  /// Shortest-path distance from s to goal g along the environment's
  /// geometry. Only defined for the maze environments.
  virtual double goal_distance(const Observation& s, int goal) const;

  /// Applies the dynamics, detects goal entry, and fills per-GVF
  /// (cumulant, discount). `cumulant_rngs[i]` feeds GVF i's schedule.
  StepOutcome step(const Observation& s, ActionId a, std::span<const GvfQuestion> gvfs,
                   RngStream& env_rng, std::span<RngStream> cumulant_rngs) const;

 protected:
  void check_action(ActionId a) const;
};

using EnvironmentPtr = std::shared_ptr<const Environment>;

/// Environment ids accepted by make_environment.
const std::vector<std::string>& environment_ids();

struct EnvironmentOptions {
  long pretrain_steps = 500000;  // Mountain Car GVF policy pretraining
  std::uint64_t pretrain_seed = 20220401;
};

EnvironmentPtr make_environment(const std::string& id, const EnvironmentOptions& options = {});

}  // namespace contaux::envs
