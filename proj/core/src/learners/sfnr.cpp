#include <cmath>
#include <stdexcept>

#include "contaux/learners/learner.hpp"

namespace contaux::learners {

SuccessorFeatures::SuccessorFeatures(std::size_t rows, std::size_t dim, const optim::Optimizer& optimizer)
    : dim_(dim), w_(rows, std::vector<double>(dim, 0.0)), reward_dense_(rows, 0.0) {
  opts_.reserve(rows);
  for (std::size_t m = 0; m < rows; ++m) opts_.push_back(optimizer.clone());
}

void SuccessorFeatures::psi(const SparseVector& x, std::span<double> out) const {
  for (std::size_t m = 0; m < w_.size(); ++m) out[m] = x.dot(w_[m]);
}

double SuccessorFeatures::update(const SparseVector& reward_x, double gamma_next, std::span<const double> psi_now,
                                 std::span<const double> psi_next, const SparseVector& direction,
                                 std::span<const double> z) {
  if (reward_x.dim != w_.size()) throw std::invalid_argument("successor features: reward dimension mismatch");
  for (std::size_t k = 0; k < reward_x.nnz(); ++k) reward_dense_[reward_x.indices[k]] += reward_x.values[k];
  double change = 0.0;
  for (std::size_t m = 0; m < w_.size(); ++m) {
    const double delta = reward_dense_[m] + gamma_next * psi_next[m] - psi_now[m];
    change += opts_[m]->update(w_[m], delta, direction, z);
  }
  for (std::size_t k = 0; k < reward_x.nnz(); ++k) reward_dense_[reward_x.indices[k]] = 0.0;
  return change;
}

void SuccessorFeatures::fill(double value) {
  for (auto& row : w_) std::fill(row.begin(), row.end(), value);
}

SfNrLearner::SfNrLearner(features::EncoderPtr encoder, features::RewardMapPtr reward_map, PolicyPtr pi,
                         TraceRule rule, double lambda, const optim::Optimizer& sf_optimizer,
                         const optim::Optimizer& cumulant_optimizer, double emphasis_clip)
    : encoder_(std::move(encoder)),
      reward_map_(std::move(reward_map)),
      pi_(std::move(pi)),
      trace_(encoder_->dim(), rule, lambda, emphasis_clip),
      sf_(reward_map_->dim(), encoder_->dim(), sf_optimizer),
      cumulant_opt_(cumulant_optimizer.clone()),
      wc_(reward_map_->dim(), 0.0),
      reward_x_(reward_map_->dim()),
      psi_now_(reward_map_->dim(), 0.0),
      psi_next_(reward_map_->dim(), 0.0),
      psi_scratch_(reward_map_->dim(), 0.0) {
  ws_.prepare(encoder_->dim(), encoder_->num_actions());
}

double SfNrLearner::sf_step(const Transition& t, const SparseVector& direction) {
  sf_.psi(ws_.x, psi_now_);
  std::fill(psi_next_.begin(), psi_next_.end(), 0.0);
  if (t.discount_next != 0.0) {
    ws_.expected_next(*encoder_, *pi_, t.s_next);
    for (int a = 0; a < encoder_->num_actions(); ++a) {
      if (ws_.pi_next[a] == 0.0) continue;
      sf_.psi(ws_.x_next[a], psi_scratch_);
      for (std::size_t m = 0; m < psi_next_.size(); ++m) psi_next_[m] += ws_.pi_next[a] * psi_scratch_[m];
    }
  } else {
    ws_.x_next_bar.clear();
  }
  ws_.overshoot_for(direction, t.discount_next);
  ++sf_updates_;
  return sf_.update(reward_x_, t.discount_next, psi_now_, psi_next_, direction, ws_.overshoot);
}

double SfNrLearner::update(const Transition& t, const StepContext& ctx) {
  encoder_->encode(t.s, t.a, ws_.x);
  const int actions = encoder_->num_actions();
  pi_->probabilities(t.s, std::span<double>(ws_.pi_s.data(), actions));
  trace_.step(ws_.x, ws_.pi_s[t.a.index], ctx);
  reward_map_->encode(t.s, t.a, t.s_next, reward_x_);
  last_sf_change_ = sf_step(t, trace_.trace().view());
  trace_.finish(t.discount_next);

  last_cumulant_change_ = 0.0;
  if (!reward_x_.empty()) {
    const double delta = t.cumulant - reward_x_.dot(wc_);
    std::vector<double> z(reward_x_.nnz());
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = reward_x_.values[k] * reward_x_.values[k];
    last_cumulant_change_ = cumulant_opt_->update(wc_, delta, reward_x_, z);
    ++cumulant_updates_;
  }
  return last_sf_change_ + last_cumulant_change_;
}

double SfNrLearner::replay(const Transition& t, const StepContext& ctx) {
  encoder_->encode(t.s, t.a, ws_.x);
  const int actions = encoder_->num_actions();
  pi_->probabilities(t.s, std::span<double>(ws_.pi_s.data(), actions));
  const double coeff = trace_.one_step_coefficient(ws_.pi_s[t.a.index], ctx);
  if (coeff == 0.0) return 0.0;
  SparseVector direction = ws_.x;
  for (double& v : direction.values) v *= coeff;
  reward_map_->encode(t.s, t.a, t.s_next, reward_x_);
  last_sf_change_ = sf_step(t, direction);
  last_cumulant_change_ = 0.0;
  return last_sf_change_;
}

double SfNrLearner::predict(const Observation& s, ActionId a) const {
  SparseFeatures x;
  encoder_->encode(s, a, x);
  double v = 0.0;
  for (std::size_t m = 0; m < wc_.size(); ++m) {
    if (wc_[m] != 0.0) v += sf_.psi_row(m, x) * wc_[m];
  }
  return v;
}

}  // namespace contaux::learners
