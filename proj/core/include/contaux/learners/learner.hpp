#pragma once

#include <memory>
#include <string>
#include <vector>

#include "contaux/features/encoder.hpp"
#include "contaux/features/reward_features.hpp"
#include "contaux/learners/trace.hpp"
#include "contaux/optim/optimizer.hpp"
#include "contaux/policy.hpp"
#include "contaux/types.hpp"

namespace contaux::learners {

/// Off-policy prediction learner for one GVF.
class GvfLearner {
 public:
  virtual ~GvfLearner() = default;

  virtual std::string name() const = 0;
  /// Online update; returns the L1 norm of this step's weight change.
  virtual double update(const Transition& t, const StepContext& ctx) = 0;
  /// One-step (lambda = 0) update from a replayed transition. Leaves the
  /// online trace untouched.
  virtual double replay(const Transition& t, const StepContext& ctx) = 0;
  virtual double predict(const Observation& s, ActionId a) const = 0;
  /// Clears traces at a behavior-episode boundary.
  virtual void end_episode() = 0;
  /// Hook before evaluation (LSTD solves here).
  virtual void prepare_evaluation() {}
  virtual double lambda() const = 0;
};

using LearnerPtr = std::unique_ptr<GvfLearner>;

/// Scratch buffers shared by the linear learners.
struct Workspace {
  SparseFeatures x;
  SparseFeatures x_next_bar;
  std::vector<SparseFeatures> x_next;
  std::vector<double> dense;  // zeroed between uses
  std::vector<double> overshoot;
  std::array<double, kMaxActions> pi_s{};
  std::array<double, kMaxActions> pi_next{};

  void prepare(std::size_t dim, int actions);
  /// x_next_bar = sum_a pi(a|s') x(s', a); also caches x(s', a) per action.
  void expected_next(const features::StateActionEncoder& enc, const Policy& pi, const Observation& s_next);
  /// Overshoot vector on the support of `phi` with x' = x_next_bar.
  void overshoot_for(const SparseVector& phi, double gamma_next);
};

/// TB(lambda), TB with interest, and ETB(lambda) share this linear learner.
class TbLearner final : public GvfLearner {
 public:
  TbLearner(features::EncoderPtr encoder, PolicyPtr pi, TraceRule rule, double lambda,
            const optim::Optimizer& optimizer, double emphasis_clip = 0.0);

  std::string name() const override { return to_string(trace_.rule()); }
  double update(const Transition& t, const StepContext& ctx) override;
  double replay(const Transition& t, const StepContext& ctx) override;
  double predict(const Observation& s, ActionId a) const override;
  void end_episode() override { trace_.reset(); }
  double lambda() const override { return trace_.lambda(); }

  const std::vector<double>& weights() const { return w_; }
  std::vector<double>& mutable_weights() { return w_; }
  const TbTrace& trace() const { return trace_; }
  /// TD error of the most recent update.
  double last_delta() const { return last_delta_; }

 private:
  double apply(const Transition& t, const SparseVector& direction);

  features::EncoderPtr encoder_;
  PolicyPtr pi_;
  TbTrace trace_;
  optim::OptimizerPtr opt_;
  std::vector<double> w_;
  Workspace ws_;
  double last_delta_ = 0.0;
};

/// Matrix of successor-feature weights: row m predicts component m of
/// psi(s, a) = W x(s, a). Each row owns an optimizer.
class SuccessorFeatures {
 public:
  SuccessorFeatures(std::size_t rows, std::size_t dim, const optim::Optimizer& optimizer);

  std::size_t rows() const { return w_.size(); }
  std::size_t dim() const { return dim_; }
  void psi(const SparseVector& x, std::span<double> out) const;
  double psi_row(std::size_t m, const SparseVector& x) const { return x.dot(w_[m]); }
  /// delta_m = reward_x_m + gamma' psi'_m - psi_m per row, applied along
  /// `direction` with overshoot `z`. psi_next is the pi-expected next SF.
  double update(const SparseVector& reward_x, double gamma_next, std::span<const double> psi_now,
                std::span<const double> psi_next, const SparseVector& direction, std::span<const double> z);
  void fill(double value);

  const std::vector<double>& row(std::size_t m) const { return w_[m]; }
  std::vector<double>& mutable_row(std::size_t m) { return w_[m]; }
  const optim::Optimizer& optimizer(std::size_t m) const { return *opts_[m]; }

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> w_;
  std::vector<optim::OptimizerPtr> opts_;
  std::vector<double> reward_dense_;
};

/// SF-NR: successor features learned with a TB-family trace plus a one-step
/// cumulant regression, prediction <W x(s,a), w_c>.
class SfNrLearner final : public GvfLearner {
 public:
  SfNrLearner(features::EncoderPtr encoder, features::RewardMapPtr reward_map, PolicyPtr pi, TraceRule rule,
              double lambda, const optim::Optimizer& sf_optimizer, const optim::Optimizer& cumulant_optimizer,
              double emphasis_clip = 0.0);

  std::string name() const override { return "sfnr"; }
  double update(const Transition& t, const StepContext& ctx) override;
  double replay(const Transition& t, const StepContext& ctx) override;
  double predict(const Observation& s, ActionId a) const override;
  void end_episode() override { trace_.reset(); }
  double lambda() const override { return trace_.lambda(); }

  const SuccessorFeatures& sf() const { return sf_; }
  SuccessorFeatures& mutable_sf() { return sf_; }
  const std::vector<double>& cumulant_weights() const { return wc_; }
  std::vector<double>& mutable_cumulant_weights() { return wc_; }
  std::size_t sf_updates() const { return sf_updates_; }
  std::size_t cumulant_updates() const { return cumulant_updates_; }
  /// L1 change of W and of w_c from the most recent call.
  double last_sf_change() const { return last_sf_change_; }
  double last_cumulant_change() const { return last_cumulant_change_; }

 private:
  double sf_step(const Transition& t, const SparseVector& direction);

  features::EncoderPtr encoder_;
  features::RewardMapPtr reward_map_;
  PolicyPtr pi_;
  TbTrace trace_;
  SuccessorFeatures sf_;
  optim::OptimizerPtr cumulant_opt_;
  std::vector<double> wc_;
  Workspace ws_;
  SparseFeatures reward_x_;
  std::vector<double> psi_now_;
  std::vector<double> psi_next_;
  std::vector<double> psi_scratch_;
  std::size_t sf_updates_ = 0;
  std::size_t cumulant_updates_ = 0;
  double last_sf_change_ = 0.0;
  double last_cumulant_change_ = 0.0;
};

/// LSTD(lambda) with a TB trace; the weights are re-solved on demand.
class LstdLearner final : public GvfLearner {
 public:
  LstdLearner(features::EncoderPtr encoder, PolicyPtr pi, double lambda, double ridge = 1e-6);
  ~LstdLearner() override;

  std::string name() const override { return "lstd"; }
  /// Accumulates A and b. Weights change only at solve(), so this returns 0.
  double update(const Transition& t, const StepContext& ctx) override;
  double replay(const Transition& t, const StepContext& ctx) override;
  double predict(const Observation& s, ActionId a) const override;
  void end_episode() override { trace_.reset(); }
  void prepare_evaluation() override { solve(); }
  double lambda() const override { return trace_.lambda(); }

  /// w = (A / t + ridge I)^{-1} (b / t); zero when no samples were seen.
  const std::vector<double>& solve();
  const std::vector<double>& weights() const { return w_; }
  std::size_t samples() const { return samples_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  features::EncoderPtr encoder_;
  PolicyPtr pi_;
  TbTrace trace_;
  double ridge_;
  std::vector<double> w_;
  Workspace ws_;
  std::size_t samples_ = 0;
};

}  // namespace contaux::learners
