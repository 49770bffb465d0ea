#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "contaux/envs/environment.hpp"
#include "contaux/learners/learner.hpp"

namespace contaux::behavior {

/// sum_j deltas_j + step_penalty.
double intrinsic_reward(std::span<const double> deltas, double step_penalty);

/// The behavior policy mu together with whatever it learns from.
class Behavior {
 public:
  virtual ~Behavior() = default;

  virtual std::string name() const = 0;
  virtual int num_actions() const = 0;
  virtual void begin_episode(const Observation&, RngStream&) {}
  /// mu(.|s) under the current parameters.
  virtual void probabilities(const Observation& s, std::span<double> out) = 0;
  /// `t.cumulant` carries the intrinsic reward R_{t+1}; `t.discount_next`
  /// the behavior discount.
  virtual void update(const Transition&) {}
  virtual void end_episode() {}

  /// Samples A_t ~ mu(.|s); writes mu(A_t|s) to `prob` when given.
  ActionId act(const Observation& s, RngStream& rng, double* prob = nullptr);
};

using BehaviorPtr = std::unique_ptr<Behavior>;

class RandomBehavior final : public Behavior {
 public:
  explicit RandomBehavior(int num_actions) : num_actions_(num_actions) {}
  std::string name() const override { return "random"; }
  int num_actions() const override { return num_actions_; }
  void probabilities(const Observation&, std::span<double> out) override;

 private:
  int num_actions_;
};

/// Heads for the nearest goal, chosen at episode start with ties broken
/// uniformly, by following that goal's GVF policy.
class FixedBehavior final : public Behavior {
 public:
  FixedBehavior(envs::EnvironmentPtr env, std::vector<PolicyPtr> goal_policies);

  std::string name() const override { return "fixed"; }
  int num_actions() const override { return env_->num_actions(); }
  void begin_episode(const Observation& s, RngStream& rng) override;
  void probabilities(const Observation& s, std::span<double> out) override;

  int target() const { return target_; }

 private:
  envs::EnvironmentPtr env_;
  std::vector<PolicyPtr> policies_;
  int target_ = 0;
};

/// Epsilon-greedy Expected Sarsa(lambda) with an accumulating trace.
class EsarsaControl final : public Behavior {
 public:
  EsarsaControl(features::EncoderPtr encoder, double epsilon, double lambda, const optim::Optimizer& optimizer);

  std::string name() const override { return "esarsa"; }
  int num_actions() const override { return encoder_->num_actions(); }
  void probabilities(const Observation& s, std::span<double> out) override;
  void update(const Transition& t) override;
  void end_episode() override;

  /// q(s, a) = threshold everywhere.
  void optimistic_init(double threshold);
  double value(const Observation& s, ActionId a) const;
  const std::vector<double>& weights() const { return w_; }

 private:
  void action_values(const Observation& s, std::span<double> q) const;

  features::EncoderPtr encoder_;
  double epsilon_;
  double lambda_;
  optim::OptimizerPtr opt_;
  std::vector<double> w_;
  learners::EligibilityTrace trace_;
  double gamma_prev_ = 0.0;
  learners::Workspace ws_;
};

/// Generalized policy improvement over the GVF policies:
/// argmax_a max_j <psi_j(s, a), theta_r>, epsilon-greedy.
class GpiBehavior final : public Behavior {
 public:
  GpiBehavior(features::EncoderPtr state_encoder, features::EncoderPtr reward_encoder,
              std::vector<PolicyPtr> policies, double epsilon, double lambda,
              const optim::Optimizer& sf_optimizer, const optim::Optimizer& reward_optimizer);

  std::string name() const override { return "gpi"; }
  int num_actions() const override { return state_encoder_->num_actions(); }
  void probabilities(const Observation& s, std::span<double> out) override;
  void update(const Transition& t) override;
  void end_episode() override;

  /// psi = 1 everywhere and theta_r = threshold / d_r.
  void optimistic_init(double threshold);
  /// max_j <psi_j(s, a), theta_r> for every action.
  void action_values(const Observation& s, std::span<double> out) const;

  std::size_t num_policies() const { return sfs_.size(); }
  learners::SuccessorFeatures& sf(std::size_t j) { return *sfs_[j]; }
  const learners::SuccessorFeatures& sf(std::size_t j) const { return *sfs_[j]; }
  std::vector<double>& reward_weights() { return theta_; }
  const std::vector<double>& reward_weights() const { return theta_; }
  double reward_prediction(const Observation& s, ActionId a) const;

 private:
  features::EncoderPtr state_encoder_;
  features::EncoderPtr reward_encoder_;
  std::vector<PolicyPtr> policies_;
  double epsilon_;
  std::vector<std::unique_ptr<learners::SuccessorFeatures>> sfs_;
  std::vector<learners::TbTrace> traces_;
  optim::OptimizerPtr reward_opt_;
  std::vector<double> theta_;
  learners::Workspace ws_;
  SparseFeatures reward_x_;
  std::vector<double> psi_now_;
  std::vector<double> psi_next_;
  std::vector<double> psi_scratch_;
};

}  // namespace contaux::behavior
