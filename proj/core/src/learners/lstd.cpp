#include <Eigen/Dense>
#include <cmath>

#include "contaux/learners/learner.hpp"

namespace contaux::learners {

struct LstdLearner::Impl {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

LstdLearner::LstdLearner(features::EncoderPtr encoder, PolicyPtr pi, double lambda, double ridge)
    : impl_(std::make_unique<Impl>()),
      encoder_(std::move(encoder)),
      pi_(std::move(pi)),
      trace_(encoder_->dim(), TraceRule::kTb, lambda),
      ridge_(ridge),
      w_(encoder_->dim(), 0.0) {
  const auto d = static_cast<Eigen::Index>(encoder_->dim());
  impl_->a = Eigen::MatrixXd::Zero(d, d);
  impl_->b = Eigen::VectorXd::Zero(d);
  ws_.prepare(encoder_->dim(), encoder_->num_actions());
}

LstdLearner::~LstdLearner() = default;

double LstdLearner::update(const Transition& t, const StepContext& ctx) {
  encoder_->encode(t.s, t.a, ws_.x);
  const int actions = encoder_->num_actions();
  pi_->probabilities(t.s, std::span<double>(ws_.pi_s.data(), actions));
  trace_.step(ws_.x, ws_.pi_s[t.a.index], ctx);
  if (t.discount_next != 0.0) {
    ws_.expected_next(*encoder_, *pi_, t.s_next);
  } else {
    ws_.x_next_bar.clear();
  }
  const SparseVector& z = trace_.trace().view();
  for (std::size_t i = 0; i < z.nnz(); ++i) {
    const Eigen::Index r = z.indices[i];
    const double zi = z.values[i];
    for (std::size_t k = 0; k < ws_.x.nnz(); ++k) impl_->a(r, ws_.x.indices[k]) += zi * ws_.x.values[k];
    for (std::size_t k = 0; k < ws_.x_next_bar.nnz(); ++k) {
      impl_->a(r, ws_.x_next_bar.indices[k]) -= zi * t.discount_next * ws_.x_next_bar.values[k];
    }
    impl_->b(r) += zi * t.cumulant;
  }
  ++samples_;
  trace_.finish(t.discount_next);
  return 0.0;
}

double LstdLearner::replay(const Transition&, const StepContext&) { return 0.0; }

const std::vector<double>& LstdLearner::solve() {
  if (samples_ == 0) {
    std::fill(w_.begin(), w_.end(), 0.0);
    return w_;
  }
  const double inv_t = 1.0 / static_cast<double>(samples_);
  const auto d = impl_->a.rows();
  Eigen::MatrixXd m = impl_->a * inv_t;
  m.diagonal().array() += ridge_;
  const Eigen::VectorXd rhs = impl_->b * inv_t;
  Eigen::VectorXd sol = m.partialPivLu().solve(rhs);
  if (!sol.allFinite()) sol = m.completeOrthogonalDecomposition().solve(rhs);
  for (Eigen::Index i = 0; i < d; ++i) w_[i] = sol(i);
  return w_;
}

double LstdLearner::predict(const Observation& s, ActionId a) const {
  SparseFeatures x;
  encoder_->encode(s, a, x);
  return x.dot(w_);
}

}  // namespace contaux::learners
