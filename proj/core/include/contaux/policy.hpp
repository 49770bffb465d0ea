#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "contaux/rng.hpp"
#include "contaux/types.hpp"

namespace contaux {

inline constexpr int kMaxActions = 4;

/// A stationary stochastic policy pi(a|s) over a small discrete action set.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual int num_actions() const = 0;
  /// Writes pi(.|s) into out[0..num_actions).
  virtual void probabilities(const Observation& s, std::span<double> out) const = 0;

  double prob(const Observation& s, ActionId a) const;
  ActionId sample(const Observation& s, RngStream& rng) const;
};

using PolicyPtr = std::shared_ptr<const Policy>;

class UniformPolicy final : public Policy {
 public:
  explicit UniformPolicy(int num_actions) : num_actions_(num_actions) {}
  int num_actions() const override { return num_actions_; }
  void probabilities(const Observation&, std::span<double> out) const override;

 private:
  int num_actions_;
};

/// Policy backed by a callable that fills the probability vector.
class FunctionPolicy final : public Policy {
 public:
  using Fn = std::function<void(const Observation&, std::span<double>)>;
  FunctionPolicy(int num_actions, Fn fn) : num_actions_(num_actions), fn_(std::move(fn)) {}
  int num_actions() const override { return num_actions_; }
  void probabilities(const Observation& s, std::span<double> out) const override { fn_(s, out); }

 private:
  int num_actions_;
  Fn fn_;
};

/// Greedy policy over per-action scores, splitting mass uniformly over ties.
void greedy_probabilities(std::span<const double> scores, std::span<double> out);

/// Epsilon-greedy over scores: ties share the greedy mass 1 - eps, every
/// action additionally gets eps / A.
void epsilon_greedy_probabilities(std::span<const double> scores, double epsilon,
                                  std::span<double> out);

/// Draws an index from a probability vector.
int sample_index(std::span<const double> probs, RngStream& rng);

}  // namespace contaux
