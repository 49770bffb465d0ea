#include "contaux/features/reward_features.hpp"

namespace contaux::features {

void GoalIndicatorRewardFeatures::encode(const Observation&, ActionId, const Observation& s_next,
                                         SparseFeatures& out) const {
  out.dim = dim();
  out.clear();
  if (auto g = goal_at_(s_next); g && *g >= 0 && *g < num_goals_) {
    out.push(static_cast<std::uint32_t>(*g), 1.0);
  }
}

void StateActionRewardFeatures::encode(const Observation& s, ActionId a, const Observation&,
                                       SparseFeatures& out) const {
  encoder_->encode(s, a, out);
}

}  // namespace contaux::features
