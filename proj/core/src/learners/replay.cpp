#include "contaux/learners/replay.hpp"

#include <stdexcept>

#include "contaux/learners/learner.hpp"

namespace contaux::learners {

ReplayBuffer::ReplayBuffer(std::size_t capacity, std::size_t batch) : capacity_(capacity), batch_(batch) {
  if (capacity_ == 0) throw std::invalid_argument("replay capacity must be > 0");
}

void ReplayBuffer::push(ReplayRecord record) {
  if (items_.size() == capacity_) items_.pop_front();
  items_.push_back(std::move(record));
}

std::vector<std::size_t> ReplayBuffer::sample_indices(RngStream& rng) const {
  std::vector<std::size_t> out;
  if (items_.empty()) return out;
  out.reserve(batch_);
  for (std::size_t k = 0; k < batch_; ++k) out.push_back(rng.index(items_.size()));
  return out;
}

double replay_step(ReplayBuffer& buffer, GvfLearner& learner, std::size_t gvf, const ReplayRecord& record,
                   RngStream& rng) {
  if (learner.lambda() != 0.0) throw std::invalid_argument("replay requires lambda = 0");
  buffer.push(record);
  StepContext ctx{record.behavior_prob, record.interests.empty() ? 1.0 : record.interests[gvf]};
  double change = learner.update(record.transition(gvf), ctx);
  for (std::size_t i : buffer.sample_indices(rng)) {
    const ReplayRecord& r = buffer.at(i);
    StepContext rctx{r.behavior_prob, r.interests.empty() ? 1.0 : r.interests[gvf]};
    change += learner.replay(r.transition(gvf), rctx);
  }
  return change;
}

}  // namespace contaux::learners
