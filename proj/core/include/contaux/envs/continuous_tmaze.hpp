#pragma once

#include <array>
#include <vector>

#include "contaux/envs/environment.hpp"

namespace contaux::envs {

/// TMaze embedded in [0,1]^2 as zero-width hallways.
///
/// Seven edges between the junction/end nodes:
///   0 main  (0.5,0)-(0.5,0.8)   1 left  (0,0.8)-(0.5,0.8)   2 right (0.5,0.8)-(1,0.8)
///   3 (0,0.8)-(0,1)  4 (0,0.8)-(0,0.6)  5 (1,0.8)-(1,1)  6 (1,0.8)-(1,0.6)
/// Goal boxes of half-width eps at (0,1), (1,1), (0,0.6), (1,0.6).
class ContinuousTMaze final : public Environment {
 public:
  static constexpr double kStep = 0.08;
  static constexpr double kNoise = 0.01;
  static constexpr double kEps = 0.04;
  static constexpr int kNumEdges = 7;
  static constexpr int kNumGoals = 4;

  ContinuousTMaze();

  std::string id() const override { return "continuous-tmaze"; }
  int num_actions() const override { return 4; }
  int num_goals() const override { return kNumGoals; }

  Observation reset(RngStream& rng) const override;
  Observation move(const Observation& s, ActionId a, RngStream& rng) const override;
  Observation nominal_move(const Observation& s, ActionId a) const override;
  std::optional<int> goal_at(const Observation& s) const override;
  bool stochastic_dynamics() const override { return true; }

  std::vector<GvfQuestion> gvf_suite(RngStream& constants_rng) const override;
  FeatureSet features() const override;
  double step_penalty() const override { return -0.01; }
  double gamma() const override { return 0.9; }
  double goal_distance(const Observation& s, int goal) const override;

  /// Edge containing s and the arc-length fraction along it, or edge -1.
  std::pair<int, double> locate(const Observation& s) const;
  /// Distance from s to the nearest hallway point.
  double distance_to_hallway(const Observation& s) const;
  /// State-aggregation cell: edge * 3 + third.
  int aggregation_cell(const Observation& s) const;
  void goal_policy(int goal, const Observation& s, std::span<double> out) const;
  /// Points along every edge at roughly `spacing`, nodes included once.
  std::vector<Observation> hallway_grid(double spacing) const;

 private:
  Observation displace(const Observation& s, ActionId a, double length) const;

  struct Edge {
    int from;
    int to;
  };
  std::array<Observation, 8> nodes_;
  std::array<Edge, kNumEdges> edges_;
  std::array<std::array<double, 8>, 8> node_dist_{};
  std::array<int, kNumGoals> goal_node_{};
};

}  // namespace contaux::envs
