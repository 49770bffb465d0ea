#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "contaux/features/encoder.hpp"

namespace contaux::features {

/// Reward features x(s, a, s').
class RewardFeatureMap {
 public:
  virtual ~RewardFeatureMap() = default;
  virtual std::size_t dim() const = 0;
  virtual void encode(const Observation& s, ActionId a, const Observation& s_next,
                      SparseFeatures& out) const = 0;

  SparseFeatures reward_features(const Observation& s, ActionId a, const Observation& s_next) const {
    SparseFeatures out(dim());
    encode(s, a, s_next, out);
    return out;
  }
};

using RewardMapPtr = std::shared_ptr<const RewardFeatureMap>;
using GoalFn = std::function<std::optional<int>(const Observation&)>;

/// e_i when s' lies in goal i, the zero vector otherwise.
class GoalIndicatorRewardFeatures final : public RewardFeatureMap {
 public:
  GoalIndicatorRewardFeatures(int num_goals, GoalFn goal_at)
      : num_goals_(num_goals), goal_at_(std::move(goal_at)) {}

  std::size_t dim() const override { return static_cast<std::size_t>(num_goals_); }
  void encode(const Observation& s, ActionId a, const Observation& s_next,
              SparseFeatures& out) const override;

 private:
  int num_goals_;
  GoalFn goal_at_;
};

/// x(s, a) from a state-action encoder; s' is ignored.
class StateActionRewardFeatures final : public RewardFeatureMap {
 public:
  explicit StateActionRewardFeatures(EncoderPtr encoder) : encoder_(std::move(encoder)) {}

  std::size_t dim() const override { return encoder_->dim(); }
  void encode(const Observation& s, ActionId a, const Observation& s_next,
              SparseFeatures& out) const override;
  const StateActionEncoder& encoder() const { return *encoder_; }

 private:
  EncoderPtr encoder_;
};

}  // namespace contaux::features
