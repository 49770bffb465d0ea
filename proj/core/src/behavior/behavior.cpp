#include "contaux/behavior/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace contaux::behavior {

double intrinsic_reward(std::span<const double> deltas, double step_penalty) {
  double r = 0.0;
  for (double d : deltas) r += d;
  return r + step_penalty;
}

ActionId Behavior::act(const Observation& s, RngStream& rng, double* prob) {
  std::array<double, kMaxActions> p{};
  const int n = num_actions();
  probabilities(s, std::span<double>(p.data(), n));
  const int a = sample_index(std::span<const double>(p.data(), n), rng);
  if (prob) *prob = p[a];
  return ActionId(a);
}

void RandomBehavior::probabilities(const Observation&, std::span<double> out) {
  for (int a = 0; a < num_actions_; ++a) out[a] = 1.0 / num_actions_;
}

FixedBehavior::FixedBehavior(envs::EnvironmentPtr env, std::vector<PolicyPtr> goal_policies)
    : env_(std::move(env)), policies_(std::move(goal_policies)) {
  if (env_->id() != "tabular-tmaze" && env_->id() != "continuous-tmaze") {
    throw std::invalid_argument("fixed behavior is only defined for the TMaze environments, not " + env_->id());
  }
  if (static_cast<int>(policies_.size()) != env_->num_goals()) {
    throw std::invalid_argument("fixed behavior needs one policy per goal");
  }
}

void FixedBehavior::begin_episode(const Observation& s, RngStream& rng) {
  std::vector<double> dist(policies_.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < dist.size(); ++g) {
    dist[g] = env_->goal_distance(s, static_cast<int>(g));
    best = std::min(best, dist[g]);
  }
  std::vector<int> nearest;
  for (std::size_t g = 0; g < dist.size(); ++g) {
    if (dist[g] - best <= 1e-9) nearest.push_back(static_cast<int>(g));
  }
  target_ = nearest[rng.index(nearest.size())];
}

void FixedBehavior::probabilities(const Observation& s, std::span<double> out) {
  policies_[target_]->probabilities(s, out);
}

EsarsaControl::EsarsaControl(features::EncoderPtr encoder, double epsilon, double lambda,
                             const optim::Optimizer& optimizer)
    : encoder_(std::move(encoder)),
      epsilon_(epsilon),
      lambda_(lambda),
      opt_(optimizer.clone()),
      w_(encoder_->dim(), 0.0),
      trace_(encoder_->dim()) {
  ws_.prepare(encoder_->dim(), encoder_->num_actions());
}

void EsarsaControl::action_values(const Observation& s, std::span<double> q) const {
  SparseFeatures x;
  for (int a = 0; a < num_actions(); ++a) {
    encoder_->encode(s, ActionId(a), x);
    q[a] = x.dot(w_);
  }
}

double EsarsaControl::value(const Observation& s, ActionId a) const {
  SparseFeatures x;
  encoder_->encode(s, a, x);
  return x.dot(w_);
}

void EsarsaControl::probabilities(const Observation& s, std::span<double> out) {
  std::array<double, kMaxActions> q{};
  const int n = num_actions();
  action_values(s, std::span<double>(q.data(), n));
  epsilon_greedy_probabilities(std::span<const double>(q.data(), n), epsilon_, out);
}

void EsarsaControl::update(const Transition& t) {
  const int n = num_actions();
  encoder_->encode(t.s, t.a, ws_.x);
  const double q = ws_.x.dot(w_);
  double q_next = 0.0;
  ws_.x_next_bar.clear();
  if (t.discount_next != 0.0) {
    std::array<double, kMaxActions> qn{};
    std::array<double, kMaxActions> mu{};
    for (int a = 0; a < n; ++a) {
      encoder_->encode(t.s_next, ActionId(a), ws_.x_next[a]);
      qn[a] = ws_.x_next[a].dot(w_);
    }
    epsilon_greedy_probabilities(std::span<const double>(qn.data(), n), epsilon_, std::span<double>(mu.data(), n));
    for (int a = 0; a < n; ++a) {
      q_next += mu[a] * qn[a];
      for (std::size_t k = 0; k < ws_.x_next[a].nnz(); ++k) {
        ws_.x_next_bar.push(ws_.x_next[a].indices[k], mu[a] * ws_.x_next[a].values[k]);
      }
    }
  }
  const double delta = t.cumulant + t.discount_next * q_next - q;
  trace_.decay(gamma_prev_ * lambda_);
  trace_.add(ws_.x, 1.0);
  const SparseVector& z = trace_.view();
  ws_.overshoot_for(z, t.discount_next);
  opt_->update(w_, delta, z, ws_.overshoot);
  gamma_prev_ = t.discount_next;
}

void EsarsaControl::end_episode() {
  trace_.clear();
  gamma_prev_ = 0.0;
}

void EsarsaControl::optimistic_init(double threshold) {
  const double v = threshold / static_cast<double>(encoder_->active_count());
  std::fill(w_.begin(), w_.end(), v);
}

GpiBehavior::GpiBehavior(features::EncoderPtr state_encoder, features::EncoderPtr reward_encoder,
                         std::vector<PolicyPtr> policies, double epsilon, double lambda,
                         const optim::Optimizer& sf_optimizer, const optim::Optimizer& reward_optimizer)
    : state_encoder_(std::move(state_encoder)),
      reward_encoder_(std::move(reward_encoder)),
      policies_(std::move(policies)),
      epsilon_(epsilon),
      reward_opt_(reward_optimizer.clone()),
      theta_(reward_encoder_->dim(), 0.0),
      reward_x_(reward_encoder_->dim()),
      psi_now_(reward_encoder_->dim(), 0.0),
      psi_next_(reward_encoder_->dim(), 0.0),
      psi_scratch_(reward_encoder_->dim(), 0.0) {
  if (policies_.empty()) throw std::invalid_argument("gpi needs at least one policy");
  if (reward_encoder_->num_actions() != state_encoder_->num_actions()) {
    throw std::invalid_argument("gpi: state and reward encoders disagree on the action count");
  }
  for (std::size_t j = 0; j < policies_.size(); ++j) {
    sfs_.push_back(std::make_unique<learners::SuccessorFeatures>(reward_encoder_->dim(), state_encoder_->dim(),
                                                                 sf_optimizer));
    traces_.emplace_back(state_encoder_->dim(), learners::TraceRule::kTb, lambda);
  }
  ws_.prepare(state_encoder_->dim(), state_encoder_->num_actions());
}

void GpiBehavior::action_values(const Observation& s, std::span<double> out) const {
  SparseFeatures x;
  std::vector<double> psi(reward_encoder_->dim());
  for (int a = 0; a < num_actions(); ++a) {
    state_encoder_->encode(s, ActionId(a), x);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& sf : sfs_) {
      sf->psi(x, psi);
      double v = 0.0;
      for (std::size_t m = 0; m < psi.size(); ++m) v += psi[m] * theta_[m];
      best = std::max(best, v);
    }
    out[a] = best;
  }
}

void GpiBehavior::probabilities(const Observation& s, std::span<double> out) {
  std::array<double, kMaxActions> v{};
  const int n = num_actions();
  action_values(s, std::span<double>(v.data(), n));
  epsilon_greedy_probabilities(std::span<const double>(v.data(), n), epsilon_, out);
}

double GpiBehavior::reward_prediction(const Observation& s, ActionId a) const {
  SparseFeatures x;
  reward_encoder_->encode(s, a, x);
  return x.dot(theta_);
}

void GpiBehavior::update(const Transition& t) {
  const int n = num_actions();
  state_encoder_->encode(t.s, t.a, ws_.x);
  reward_encoder_->encode(t.s, t.a, reward_x_);
  for (std::size_t j = 0; j < sfs_.size(); ++j) {
    policies_[j]->probabilities(t.s, std::span<double>(ws_.pi_s.data(), n));
    traces_[j].step(ws_.x, ws_.pi_s[t.a.index], learners::StepContext{});
    auto& sf = *sfs_[j];
    sf.psi(ws_.x, psi_now_);
    std::fill(psi_next_.begin(), psi_next_.end(), 0.0);
    if (t.discount_next != 0.0) {
      ws_.expected_next(*state_encoder_, *policies_[j], t.s_next);
      for (int a = 0; a < n; ++a) {
        if (ws_.pi_next[a] == 0.0) continue;
        sf.psi(ws_.x_next[a], psi_scratch_);
        for (std::size_t m = 0; m < psi_next_.size(); ++m) psi_next_[m] += ws_.pi_next[a] * psi_scratch_[m];
      }
    } else {
      ws_.x_next_bar.clear();
    }
    const SparseVector& z = traces_[j].trace().view();
    ws_.overshoot_for(z, t.discount_next);
    sf.update(reward_x_, t.discount_next, psi_now_, psi_next_, z, ws_.overshoot);
    traces_[j].finish(t.discount_next);
  }
  const double delta = t.cumulant - reward_x_.dot(theta_);
  std::vector<double> zr(reward_x_.nnz());
  for (std::size_t k = 0; k < zr.size(); ++k) zr[k] = reward_x_.values[k] * reward_x_.values[k];
  reward_opt_->update(theta_, delta, reward_x_, zr);
}

void GpiBehavior::end_episode() {
  for (auto& tr : traces_) tr.reset();
}

void GpiBehavior::optimistic_init(double threshold) {
  const double w = 1.0 / static_cast<double>(state_encoder_->active_count());
  for (auto& sf : sfs_) sf->fill(w);
  std::fill(theta_.begin(), theta_.end(), threshold / static_cast<double>(theta_.size()));
}

}  // namespace contaux::behavior
