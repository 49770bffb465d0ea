#include <stdexcept>

#include "contaux/learners/learner.hpp"

namespace contaux::learners {

TbLearner::TbLearner(features::EncoderPtr encoder, PolicyPtr pi, TraceRule rule, double lambda,
                     const optim::Optimizer& optimizer, double emphasis_clip)
    : encoder_(std::move(encoder)),
      pi_(std::move(pi)),
      trace_(encoder_->dim(), rule, lambda, emphasis_clip),
      opt_(optimizer.clone()),
      w_(encoder_->dim(), 0.0) {
  ws_.prepare(encoder_->dim(), encoder_->num_actions());
}

double TbLearner::apply(const Transition& t, const SparseVector& direction) {
  const double q = ws_.x.dot(w_);
  double q_next = 0.0;
  if (t.discount_next != 0.0) {
    ws_.expected_next(*encoder_, *pi_, t.s_next);
    for (int a = 0; a < encoder_->num_actions(); ++a) {
      if (ws_.pi_next[a] != 0.0) q_next += ws_.pi_next[a] * ws_.x_next[a].dot(w_);
    }
  } else {
    ws_.x_next_bar.clear();
  }
  last_delta_ = t.cumulant + t.discount_next * q_next - q;
  ws_.overshoot_for(direction, t.discount_next);
  return opt_->update(w_, last_delta_, direction, ws_.overshoot);
}

double TbLearner::update(const Transition& t, const StepContext& ctx) {
  encoder_->encode(t.s, t.a, ws_.x);
  const int actions = encoder_->num_actions();
  pi_->probabilities(t.s, std::span<double>(ws_.pi_s.data(), actions));
  trace_.step(ws_.x, ws_.pi_s[t.a.index], ctx);
  const double change = apply(t, trace_.trace().view());
  trace_.finish(t.discount_next);
  return change;
}

double TbLearner::replay(const Transition& t, const StepContext& ctx) {
  encoder_->encode(t.s, t.a, ws_.x);
  const int actions = encoder_->num_actions();
  pi_->probabilities(t.s, std::span<double>(ws_.pi_s.data(), actions));
  const double coeff = trace_.one_step_coefficient(ws_.pi_s[t.a.index], ctx);
  SparseVector direction = ws_.x;
  for (double& v : direction.values) v *= coeff;
  if (coeff == 0.0) return 0.0;
  return apply(t, direction);
}

double TbLearner::predict(const Observation& s, ActionId a) const {
  SparseFeatures x;
  encoder_->encode(s, a, x);
  return x.dot(w_);
}

}  // namespace contaux::learners
