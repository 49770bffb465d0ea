#pragma once

#include <string>

#include "contaux/rng.hpp"

namespace contaux {

/// Per-goal cumulant process C_i^t.
///
/// - Constant:   C^t = C
/// - Distractor: C^t ~ Normal(mu, sigma^2), i.i.d. per draw
/// - Drifter:    C^t = C^{t-1} + Normal(0, sigma^2), C^0 given
///
/// sample() is what the environment emits on goal entry; step() advances the
/// latent drifter once per environment step whether or not the goal is visited.
class CumulantSchedule {
 public:
  enum class Kind { kConstant, kDistractor, kDrifter };

  static CumulantSchedule constant(double value);
  static CumulantSchedule distractor(double mean, double variance);
  static CumulantSchedule drifter(double variance, double initial = 1.0);

  Kind kind() const { return kind_; }
  std::string name() const;

  double sample(RngStream& rng) const;
  void step(RngStream& rng);
  /// Adds a fixed increment to the drifter state (no-op for other kinds).
  void advance(double increment);
  double expected() const;

  double mean() const { return value_; }
  double variance() const { return variance_; }

 private:
  CumulantSchedule(Kind kind, double value, double variance)
      : kind_(kind), value_(value), variance_(variance) {}

  Kind kind_;
  double value_;     // constant value, distractor mean, or drifter state
  double variance_;  // distractor / drifter increment variance
};

}  // namespace contaux
