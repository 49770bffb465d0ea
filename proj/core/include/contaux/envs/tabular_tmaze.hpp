#pragma once

#include <array>
#include <vector>

#include "contaux/envs/environment.hpp"

namespace contaux::envs {

/// Deterministic grid TMaze, 19 open cells on a 7x7 board.
///
///   TL . . . . . TR     y = 6  goals at (0,6) and (6,6)
///   .  . . . . . .      y = 5
///   .  . . . . . .      y = 4  horizontal hallway (x = 0..6)
///   .  . . | . . .      y = 3
///   BL . . | . . BR     y = 2  goals at (0,2) and (6,2)
///          |            y = 1  main hallway x = 3
///          S            y = 0  start
///
/// Side hallways run along x = 0 and x = 6 for y = 2..6.
/// Goal order: 0 top-left (distractor), 1 top-right (constant),
/// 2 bottom-left (drifter), 3 bottom-right (constant).
class TabularTMaze final : public Environment {
 public:
  static constexpr int kWidth = 7;
  static constexpr int kHeight = 7;
  static constexpr int kNumCells = 19;
  static constexpr int kNumGoals = 4;

  TabularTMaze();

  std::string id() const override { return "tabular-tmaze"; }
  int num_actions() const override { return 4; }
  int num_goals() const override { return kNumGoals; }

  Observation reset(RngStream& rng) const override;
  Observation move(const Observation& s, ActionId a, RngStream& rng) const override;
  Observation nominal_move(const Observation& s, ActionId a) const override;
  std::optional<int> goal_at(const Observation& s) const override;
  bool stochastic_dynamics() const override { return false; }

  std::vector<GvfQuestion> gvf_suite(RngStream& constants_rng) const override;
  FeatureSet features() const override;
  double step_penalty() const override { return -0.01; }
  double gamma() const override { return 0.9; }
  double goal_distance(const Observation& s, int goal) const override;

  /// Cell index in [0, kNumCells), or -1 for walls.
  int cell_index(const Observation& s) const;
  Observation cell_observation(int cell) const;
  Observation start() const { return Observation(3, 0); }
  Observation goal_cell(int goal) const { return goals_[goal]; }
  /// pi_goal(.|s): uniform over the actions that minimise BFS distance.
  void goal_policy(int goal, const Observation& s, std::span<double> out) const;

 private:
  bool open(int x, int y) const;

  std::array<std::array<int, kHeight>, kWidth> index_{};
  std::vector<Observation> cells_;
  std::array<Observation, kNumGoals> goals_;
  std::array<std::vector<int>, kNumGoals> distance_;  // BFS distance per cell
};

}  // namespace contaux::envs
