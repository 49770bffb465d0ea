#include "contaux/envs/tabular_tmaze.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace contaux::envs {

namespace {

constexpr std::array<std::array<int, 2>, 4> kMoves = {{{0, 1}, {0, -1}, {-1, 0}, {1, 0}}};

}  // namespace

TabularTMaze::TabularTMaze()
    : goals_{Observation(0, 6), Observation(6, 6), Observation(0, 2), Observation(6, 2)} {
  for (auto& col : index_) col.fill(-1);
  auto add = [this](int x, int y) {
    if (index_[x][y] >= 0) return;
    index_[x][y] = static_cast<int>(cells_.size());
    cells_.emplace_back(x, y);
  };
  for (int y = 0; y <= 3; ++y) add(3, y);
  for (int x = 0; x < kWidth; ++x) add(x, 4);
  for (int y : {2, 3, 5, 6}) {
    add(0, y);
    add(6, y);
  }
  if (static_cast<int>(cells_.size()) != kNumCells) throw std::logic_error("tmaze layout size mismatch");

  for (int g = 0; g < kNumGoals; ++g) {
    auto& dist = distance_[g];
    dist.assign(kNumCells, std::numeric_limits<int>::max());
    std::deque<int> frontier;
    const int goal_cell = cell_index(goals_[g]);
    dist[goal_cell] = 0;
    frontier.push_back(goal_cell);
    while (!frontier.empty()) {
      const int c = frontier.front();
      frontier.pop_front();
      for (const auto& m : kMoves) {
        const int nx = static_cast<int>(cells_[c].x()) + m[0];
        const int ny = static_cast<int>(cells_[c].y()) + m[1];
        if (!open(nx, ny)) continue;
        const int n = index_[nx][ny];
        if (dist[n] > dist[c] + 1) {
          dist[n] = dist[c] + 1;
          frontier.push_back(n);
        }
      }
    }
  }
}

bool TabularTMaze::open(int x, int y) const {
  return x >= 0 && x < kWidth && y >= 0 && y < kHeight && index_[x][y] >= 0;
}

int TabularTMaze::cell_index(const Observation& s) const {
  const int x = static_cast<int>(std::lround(s.x()));
  const int y = static_cast<int>(std::lround(s.y()));
  return open(x, y) ? index_[x][y] : -1;
}

Observation TabularTMaze::cell_observation(int cell) const { return cells_.at(cell); }

Observation TabularTMaze::reset(RngStream&) const { return start(); }

Observation TabularTMaze::nominal_move(const Observation& s, ActionId a) const {
  check_action(a);
  const int nx = static_cast<int>(std::lround(s.x())) + kMoves[a.index][0];
  const int ny = static_cast<int>(std::lround(s.y())) + kMoves[a.index][1];
  return open(nx, ny) ? Observation(nx, ny) : s;
}

Observation TabularTMaze::move(const Observation& s, ActionId a, RngStream&) const {
  return nominal_move(s, a);
}

std::optional<int> TabularTMaze::goal_at(const Observation& s) const {
  for (int g = 0; g < kNumGoals; ++g) {
    if (goals_[g] == s) return g;
  }
  return std::nullopt;
}

double TabularTMaze::goal_distance(const Observation& s, int goal) const {
  const int c = cell_index(s);
  if (c < 0) return std::numeric_limits<double>::infinity();
  return distance_.at(goal)[c];
}

void TabularTMaze::goal_policy(int goal, const Observation& s, std::span<double> out) const {
  std::array<double, 4> score{};
  for (int a = 0; a < 4; ++a) score[a] = -goal_distance(nominal_move(s, ActionId(a)), goal);
  greedy_probabilities(score, out);
}

std::vector<GvfQuestion> TabularTMaze::gvf_suite(RngStream& constants_rng) const {
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

FeatureSet TabularTMaze::features() const {
  auto enc = std::make_shared<features::TabularEncoder>(
      kNumCells, 4, [this](const Observation& s) { return cell_index(s); });
  return {enc, enc};
}

}  // namespace contaux::envs
