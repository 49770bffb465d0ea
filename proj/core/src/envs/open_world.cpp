#include "contaux/envs/open_world.hpp"

#include <algorithm>
#include <cmath>

namespace contaux::envs {

namespace {

// Goal corners as (left?, top?).
constexpr std::array<std::array<bool, 2>, 4> kCorner = {{{true, true}, {false, true}, {true, false}, {false, false}}};

}  // namespace

Observation Open2DWorld::reset(RngStream& rng) const {
  const double x = rng.uniform(4.5, 5.5);
  const double y = rng.uniform(4.5, 5.5);
  return Observation(x, y);
}

Observation Open2DWorld::nominal_move(const Observation& s, ActionId a) const {
  check_action(a);
  double x = s.x();
  double y = s.y();
  switch (a.index) {
    case 0: y += kStep; break;
    case 1: y -= kStep; break;
    case 2: x -= kStep; break;
    default: x += kStep; break;
  }
  return Observation(std::clamp(x, 0.0, kSize), std::clamp(y, 0.0, kSize));
}

Observation Open2DWorld::move(const Observation& s, ActionId a, RngStream& rng) const {
  check_action(a);
  const double along = kStep + rng.uniform(-kNoise, kNoise);
  const double drift = rng.uniform(-kDrift, kDrift);
  double x = s.x();
  double y = s.y();
  switch (a.index) {
    case 0: y += along; x += drift; break;
    case 1: y -= along; x += drift; break;
    case 2: x -= along; y += drift; break;
    default: x += along; y += drift; break;
  }
  return Observation(std::clamp(x, 0.0, kSize), std::clamp(y, 0.0, kSize));
}

std::optional<int> Open2DWorld::goal_at(const Observation& s) const {
  for (int g = 0; g < kNumGoals; ++g) {
    const bool in_x = kCorner[g][0] ? s.x() <= kGoalSize : s.x() >= kSize - kGoalSize;
    const bool in_y = kCorner[g][1] ? s.y() >= kSize - kGoalSize : s.y() <= kGoalSize;
    if (in_x && in_y) return g;
  }
  return std::nullopt;
}

double Open2DWorld::interest(int goal, const Observation& s) const {
  const double half = kSize / 2.0;
  const bool left = s.x() < half;
  const bool top = s.y() >= half;
  return (left == kCorner.at(goal)[0] && top == kCorner.at(goal)[1]) ? 1.0 : 0.0;
}

void Open2DWorld::goal_policy(int goal, const Observation& s, std::span<double> out) const {
  std::array<double, 4> useful{};
  const bool left = kCorner.at(goal)[0];
  const bool top = kCorner.at(goal)[1];
  if (top && s.y() < kSize - kGoalSize) useful[0] = 1.0;
  if (!top && s.y() > kGoalSize) useful[1] = 1.0;
  if (left && s.x() > kGoalSize) useful[2] = 1.0;
  if (!left && s.x() < kSize - kGoalSize) useful[3] = 1.0;
  double total = useful[0] + useful[1] + useful[2] + useful[3];
  if (total == 0.0) {
    useful.fill(1.0);
    total = 4.0;
  }
  for (int a = 0; a < 4; ++a) out[a] = useful[a] / total;
}

int Open2DWorld::aggregation_cell(const Observation& s) const {
  const int ix = std::clamp(static_cast<int>(s.x() / 2.0), 0, 4);
  const int iy = std::clamp(static_cast<int>(s.y() / 2.0), 0, 4);
  return iy * 5 + ix;
}

std::vector<GvfQuestion> Open2DWorld::gvf_suite(RngStream& constants_rng) const {
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
    q.interest = [this, g](const Observation& s, ActionId) { return interest(g, s); };
    suite.push_back(std::move(q));
  }
  suite[0].cumulant = CumulantSchedule::distractor(1.0, 1.0);
  suite[1].cumulant = CumulantSchedule::constant(constants_rng.uniform(-10.0, 10.0));
  suite[2].cumulant = CumulantSchedule::drifter(0.005, 1.0);
  suite[3].cumulant = CumulantSchedule::constant(constants_rng.uniform(-10.0, 10.0));
  return suite;
}

FeatureSet Open2DWorld::features() const {
  auto state = std::make_shared<features::TileCoder>(2, 8, features::Bounds{{0.0, 0.0}, {kSize, kSize}}, 4);
  auto reward = std::make_shared<features::StateAggregation>(
      25, 4, [this](const Observation& s) { return aggregation_cell(s); });
  return {state, reward};
}

}  // namespace contaux::envs
