#include "contaux/policy.hpp"

#include <array>
#include <stdexcept>

namespace contaux {

double Policy::prob(const Observation& s, ActionId a) const {
  std::array<double, kMaxActions> p{};
  const int n = num_actions();
  if (a.index < 0 || a.index >= n) throw std::out_of_range("action index out of range");
  probabilities(s, std::span<double>(p.data(), n));
  return p[a.index];
}

ActionId Policy::sample(const Observation& s, RngStream& rng) const {
  std::array<double, kMaxActions> p{};
  const int n = num_actions();
  probabilities(s, std::span<double>(p.data(), n));
  return ActionId(sample_index(std::span<const double>(p.data(), n), rng));
}

void UniformPolicy::probabilities(const Observation&, std::span<double> out) const {
  for (int a = 0; a < num_actions_; ++a) out[a] = 1.0 / num_actions_;
}

void greedy_probabilities(std::span<const double> scores, std::span<double> out) {
  double best = scores[0];
  for (double v : scores) best = v > best ? v : best;
  int ties = 0;
  for (double v : scores) ties += (v == best);
  for (std::size_t a = 0; a < scores.size(); ++a) out[a] = scores[a] == best ? 1.0 / ties : 0.0;
}

void epsilon_greedy_probabilities(std::span<const double> scores, double epsilon,
                                  std::span<double> out) {
  greedy_probabilities(scores, out);
  const double n = static_cast<double>(scores.size());
  for (std::size_t a = 0; a < scores.size(); ++a) out[a] = (1.0 - epsilon) * out[a] + epsilon / n;
}

int sample_index(std::span<const double> probs, RngStream& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  int last = 0;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (probs[a] <= 0.0) continue;
    acc += probs[a];
    last = static_cast<int>(a);
    if (u < acc) return last;
  }
  return last;  // guards round-off when the probabilities sum to 1 - ulp
}

}  // namespace contaux
