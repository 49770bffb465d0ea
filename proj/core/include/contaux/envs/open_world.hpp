#pragma once

#include "contaux/envs/environment.hpp"

namespace contaux::envs {

/// Open 10x10 plane with 1x1 goal squares in the corners.
/// Goal order: 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.
class Open2DWorld final : public Environment {
 public:
  static constexpr double kSize = 10.0;
  static constexpr double kStep = 0.5;
  static constexpr double kNoise = 0.1;
  static constexpr double kDrift = 0.001;
  static constexpr double kGoalSize = 1.0;
  static constexpr int kNumGoals = 4;

  std::string id() const override { return "open-2d-world"; }
  int num_actions() const override { return 4; }
  int num_goals() const override { return kNumGoals; }

  Observation reset(RngStream& rng) const override;
  Observation move(const Observation& s, ActionId a, RngStream& rng) const override;
  Observation nominal_move(const Observation& s, ActionId a) const override;
  std::optional<int> goal_at(const Observation& s) const override;
  bool stochastic_dynamics() const override { return true; }

  std::vector<GvfQuestion> gvf_suite(RngStream& constants_rng) const override;
  FeatureSet features() const override;
  double step_penalty() const override { return -0.05; }
  double gamma() const override { return 0.95; }

  /// 1 when s lies in the same quadrant as the goal.
  double interest(int goal, const Observation& s) const;
  void goal_policy(int goal, const Observation& s, std::span<double> out) const;
  /// 5x5 aggregation cell (tiles of size 2x2).
  int aggregation_cell(const Observation& s) const;
};

}  // namespace contaux::envs
