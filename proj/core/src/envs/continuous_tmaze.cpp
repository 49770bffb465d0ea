#include "contaux/envs/continuous_tmaze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace contaux::envs {

namespace {

constexpr double kTol = 1e-9;
constexpr double kHallY = 0.8;

bool near(double a, double b, double tol = kTol) { return std::abs(a - b) <= tol; }

}  // namespace

ContinuousTMaze::ContinuousTMaze()
    : nodes_{Observation(0.5, 0.0), Observation(0.5, 0.8), Observation(0.0, 0.8), Observation(1.0, 0.8),
             Observation(0.0, 1.0), Observation(0.0, 0.6), Observation(1.0, 1.0), Observation(1.0, 0.6)},
      edges_{{{0, 1}, {2, 1}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {3, 7}}},
      goal_node_{4, 6, 5, 7} {
  const double inf = std::numeric_limits<double>::infinity();
  for (auto& row : node_dist_) row.fill(inf);
  for (std::size_t i = 0; i < nodes_.size(); ++i) node_dist_[i][i] = 0.0;
  for (const Edge& e : edges_) {
    const double len = std::hypot(nodes_[e.from].x() - nodes_[e.to].x(), nodes_[e.from].y() - nodes_[e.to].y());
    node_dist_[e.from][e.to] = node_dist_[e.to][e.from] = len;
  }
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      for (std::size_t j = 0; j < nodes_.size(); ++j)
        node_dist_[i][j] = std::min(node_dist_[i][j], node_dist_[i][k] + node_dist_[k][j]);
}

std::pair<int, double> ContinuousTMaze::locate(const Observation& s) const {
  for (int e = 0; e < kNumEdges; ++e) {
    const Observation& p = nodes_[edges_[e].from];
    const Observation& q = nodes_[edges_[e].to];
    if (near(p.x(), q.x())) {
      if (!near(s.x(), p.x())) continue;
      const double lo = std::min(p.y(), q.y()) - kTol;
      const double hi = std::max(p.y(), q.y()) + kTol;
      if (s.y() < lo || s.y() > hi) continue;
      return {e, std::clamp(std::abs(s.y() - p.y()) / std::abs(q.y() - p.y()), 0.0, 1.0)};
    }
    if (!near(s.y(), p.y())) continue;
    const double lo = std::min(p.x(), q.x()) - kTol;
    const double hi = std::max(p.x(), q.x()) + kTol;
    if (s.x() < lo || s.x() > hi) continue;
    return {e, std::clamp(std::abs(s.x() - p.x()) / std::abs(q.x() - p.x()), 0.0, 1.0)};
  }
  return {-1, 0.0};
}

double ContinuousTMaze::distance_to_hallway(const Observation& s) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) {
    const Observation& p = nodes_[e.from];
    const Observation& q = nodes_[e.to];
    const double cx = std::clamp(s.x(), std::min(p.x(), q.x()), std::max(p.x(), q.x()));
    const double cy = std::clamp(s.y(), std::min(p.y(), q.y()), std::max(p.y(), q.y()));
    best = std::min(best, std::hypot(s.x() - cx, s.y() - cy));
  }
  return best;
}

std::vector<Observation> ContinuousTMaze::hallway_grid(double spacing) const {
  std::vector<Observation> out;
  auto seen = [&out](const Observation& s) {
    return std::any_of(out.begin(), out.end(),
                       [&s](const Observation& o) { return near(o.x(), s.x(), 1e-9) && near(o.y(), s.y(), 1e-9); });
  };
  for (const Edge& e : edges_) {
    const Observation& p = nodes_[e.from];
    const Observation& q = nodes_[e.to];
    const int n = std::max(1, static_cast<int>(std::lround(node_dist_[e.from][e.to] / spacing)));
    for (int i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      const Observation s(p.x() + t * (q.x() - p.x()), p.y() + t * (q.y() - p.y()));
      if (!seen(s)) out.push_back(s);
    }
  }
  return out;
}

int ContinuousTMaze::aggregation_cell(const Observation& s) const {
  const auto [e, t] = locate(s);
  if (e < 0) return 0;
  return e * 3 + std::min(2, static_cast<int>(t * 3.0));
}

double ContinuousTMaze::goal_distance(const Observation& s, int goal) const {
  const auto [e, t] = locate(s);
  if (e < 0) return std::numeric_limits<double>::infinity();
  const Edge& edge = edges_[e];
  const double len = node_dist_[edge.from][edge.to];
  const int g = goal_node_.at(goal);
  return std::min(t * len + node_dist_[edge.from][g], (1.0 - t) * len + node_dist_[edge.to][g]);
}

Observation ContinuousTMaze::displace(const Observation& s, ActionId a, double length) const {
  double x = s.x();
  double y = s.y();
  const bool on_h = near(y, kHallY);
  const bool on_main = near(x, 0.5) && y <= kHallY + kTol;
  const bool on_side = (near(x, 0.0) || near(x, 1.0)) && y >= 0.6 - kTol && y <= 1.0 + kTol;
  if (a.index <= 1) {
    const double sign = a.index == 0 ? 1.0 : -1.0;
    if (!on_main && !on_side) {
      if (!on_h) return s;
      double junction = -1.0;
      for (double jx : {0.0, 0.5, 1.0}) {
        if (std::abs(x - jx) <= kEps) junction = jx;
      }
      if (junction < 0.0) return s;
      x = junction;
    }
    const bool main = near(x, 0.5);
    const double lo = main ? 0.0 : 0.6;
    const double hi = main ? kHallY : 1.0;
    y = std::clamp(y + sign * length, lo, hi);
    return Observation(x, y);
  }
  const double sign = a.index == 3 ? 1.0 : -1.0;
  if (!on_h) {
    if (std::abs(y - kHallY) > kEps) return s;
    y = kHallY;
  }
  x = std::clamp(x + sign * length, 0.0, 1.0);
  return Observation(x, y);
}

Observation ContinuousTMaze::nominal_move(const Observation& s, ActionId a) const {
  check_action(a);
  return displace(s, a, kStep);
}

Observation ContinuousTMaze::move(const Observation& s, ActionId a, RngStream& rng) const {
  check_action(a);
  return displace(s, a, kStep + rng.uniform(-kNoise, kNoise));
}

Observation ContinuousTMaze::reset(RngStream& rng) const { return Observation(0.5, rng.uniform(0.0, 0.1)); }

std::optional<int> ContinuousTMaze::goal_at(const Observation& s) const {
  for (int g = 0; g < kNumGoals; ++g) {
    const Observation& c = nodes_[goal_node_[g]];
    if (std::abs(s.x() - c.x()) <= kEps + kTol && std::abs(s.y() - c.y()) <= kEps + kTol) return g;
  }
  return std::nullopt;
}

void ContinuousTMaze::goal_policy(int goal, const Observation& s, std::span<double> out) const {
  std::array<double, 4> score{};
  for (int a = 0; a < 4; ++a) score[a] = -goal_distance(nominal_move(s, ActionId(a)), goal);
  const double best = *std::max_element(score.begin(), score.end());
  for (double& v : score) {
    if (best - v <= 1e-9) v = best;
  }
  greedy_probabilities(score, out);
}

std::vector<GvfQuestion> ContinuousTMaze::gvf_suite(RngStream& constants_rng) const {
  static const std::array<const char*, kNumGoals> names = {"top-left", "top-right", "bottom-left",
                                                           "bottom-right"};
  std::vector<GvfQuestion> suite;
  for (int g = 0; g < kNumGoals; ++g) {
    GvfQuestion q;
    q.name = names[g];
    q.goal = g;
    q.gamma = gamma();
    q.policy = std::make_shared<FunctionPolicy>(
        4, [this, g](const Observation& s, std::span<double> out) { goal_policy(g, s, out); });
    suite.push_back(std::move(q));
  }
  suite[0].cumulant = CumulantSchedule::distractor(1.0, 25.0);
  suite[1].cumulant = CumulantSchedule::constant(constants_rng.uniform(-10.0, 10.0));
  suite[2].cumulant = CumulantSchedule::drifter(0.01, 1.0);
  suite[3].cumulant = CumulantSchedule::constant(constants_rng.uniform(-10.0, 10.0));
  return suite;
}

FeatureSet ContinuousTMaze::features() const {
  auto state = std::make_shared<features::TileCoder>(2, 8, features::Bounds{{0.0, 0.0}, {1.0, 1.0}}, 4);
  auto reward = std::make_shared<features::StateAggregation>(
      kNumEdges * 3, 4, [this](const Observation& s) { return aggregation_cell(s); });
  return {state, reward};
}

}  // namespace contaux::envs
