#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "contaux/rng.hpp"
#include "contaux/types.hpp"

namespace contaux::learners {

class GvfLearner;

/// One environment step as stored for replay: the shared (s, a, s') plus
/// every GVF's cumulant and discount and the behavior probability of a.
struct ReplayRecord {
  Observation s;
  ActionId a;
  Observation s_next;
  std::vector<double> cumulants;
  std::vector<double> discounts;
  std::vector<double> interests;
  double behavior_prob = 1.0;

  Transition transition(std::size_t gvf) const {
    return Transition{s, a, s_next, cumulants[gvf], discounts[gvf]};
  }
};

/// FIFO buffer with uniform sampling.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, std::size_t batch);

  void push(ReplayRecord record);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::size_t batch() const { return batch_; }
  bool empty() const { return items_.empty(); }
  const ReplayRecord& at(std::size_t i) const { return items_[i]; }
  /// `batch` indices drawn uniformly with replacement; empty when the buffer is.
  std::vector<std::size_t> sample_indices(RngStream& rng) const;

 private:
  std::size_t capacity_;
  std::size_t batch_;
  std::deque<ReplayRecord> items_;
};

/// Stores the record, runs the online update of GVF `gvf`, then replays a
/// sampled batch through learner.replay(). Returns the summed L1 change.
double replay_step(ReplayBuffer& buffer, GvfLearner& learner, std::size_t gvf, const ReplayRecord& record,
                   RngStream& rng);

}  // namespace contaux::learners
