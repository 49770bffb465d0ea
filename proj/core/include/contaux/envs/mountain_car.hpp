#pragma once

#include <memory>
#include <utility>

#include "contaux/envs/environment.hpp"

namespace contaux::envs {

/// Standard Mountain Car. Goal 0 is the left wall, goal 1 the hilltop.
class MountainCar final : public Environment {
 public:
  static constexpr double kMinX = -1.2;
  static constexpr double kMaxX = 0.5;
  static constexpr double kMaxSpeed = 0.07;
  static constexpr int kNumGoals = 2;

  explicit MountainCar(EnvironmentOptions options = {});

  std::string id() const override { return "mountain-car"; }
  int num_actions() const override { return 3; }
  int num_goals() const override { return kNumGoals; }

  Observation reset(RngStream& rng) const override;
  Observation move(const Observation& s, ActionId a, RngStream& rng) const override;
  Observation nominal_move(const Observation& s, ActionId a) const override;
  std::optional<int> goal_at(const Observation& s) const override;
  bool stochastic_dynamics() const override { return false; }

  /// Both GVF policies come from mountain_car_pretrain, cached per
  /// (steps, seed) for the lifetime of the process.
  std::vector<GvfQuestion> gvf_suite(RngStream& constants_rng) const override;
  FeatureSet features() const override;
  double step_penalty() const override { return -0.01; }
  double gamma() const override { return 0.99; }

  const EnvironmentOptions& options() const { return options_; }

 private:
  EnvironmentOptions options_;
};

/// Learns greedy (left wall, hilltop) policies offline with ESARSA(lambda)
/// on a -1 per step reward, 16 tilings x 2 tiles, epsilon 0.1.
std::pair<PolicyPtr, PolicyPtr> mountain_car_pretrain(const MountainCar& env, long steps, RngStream& rng);

}  // namespace contaux::envs
