#include "contaux/envs/mountain_car.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace contaux::envs {

namespace {

features::Bounds car_bounds() {
  return {{MountainCar::kMinX, -MountainCar::kMaxSpeed}, {MountainCar::kMaxX, MountainCar::kMaxSpeed}};
}

/// Greedy policy over a linear action-value function.
class GreedyLinearPolicy final : public Policy {
 public:
  GreedyLinearPolicy(std::shared_ptr<const features::TileCoder> encoder, std::vector<double> weights)
      : encoder_(std::move(encoder)), weights_(std::move(weights)) {}

  int num_actions() const override { return encoder_->num_actions(); }

  void probabilities(const Observation& s, std::span<double> out) const override {
    std::array<double, kMaxActions> q{};
    SparseFeatures x;
    for (int a = 0; a < num_actions(); ++a) {
      encoder_->encode(s, ActionId(a), x);
      q[a] = x.dot(weights_);
    }
    greedy_probabilities(std::span<const double>(q.data(), num_actions()), out);
  }

 private:
  std::shared_ptr<const features::TileCoder> encoder_;
  std::vector<double> weights_;
};

PolicyPtr pretrain_one(const MountainCar& env, int goal, long steps, RngStream& rng) {
  constexpr double kEpsilon = 0.1;
  constexpr double kLambda = 0.9;
  constexpr int kTilings = 16;
  constexpr long kEpisodeCap = 2000;
  const double alpha = 0.1 / kTilings;
  auto encoder = std::make_shared<features::TileCoder>(kTilings, 2, car_bounds(), 3);
  std::vector<double> w(encoder->dim(), 0.0);
  std::vector<double> z(encoder->dim(), 0.0);
  std::vector<SparseFeatures> xs(3);

  auto random_state = [&rng] {
    const double x = rng.uniform(MountainCar::kMinX, MountainCar::kMaxX);
    const double v = rng.uniform(-MountainCar::kMaxSpeed, MountainCar::kMaxSpeed);
    return Observation(x, v);
  };
  auto values = [&](const Observation& s, std::array<double, 3>& q) {
    for (int a = 0; a < 3; ++a) {
      encoder->encode(s, ActionId(a), xs[a]);
      q[a] = xs[a].dot(w);
    }
  };

  Observation s = random_state();
  long episode_len = 0;
  std::array<double, 3> q{};
  std::array<double, 3> q_next{};
  std::array<double, 3> mu{};
  for (long t = 0; t < steps; ++t) {
    values(s, q);
    epsilon_greedy_probabilities(q, kEpsilon, mu);
    const int a = sample_index(mu, rng);
    const SparseFeatures x = xs[a];
    const Observation s_next = env.nominal_move(s, ActionId(a));
    const bool done = env.goal_at(s_next) == goal;
    double target = -1.0;
    if (!done) {
      values(s_next, q_next);
      epsilon_greedy_probabilities(q_next, kEpsilon, mu);
      for (int b = 0; b < 3; ++b) target += mu[b] * q_next[b];
    }
    const double delta = target - q[a];
    for (double& zi : z) zi *= kLambda;
    for (std::size_t k = 0; k < x.nnz(); ++k) z[x.indices[k]] += x.values[k];
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += alpha * delta * z[i];
    ++episode_len;
    if (done || episode_len >= kEpisodeCap) {
      std::fill(z.begin(), z.end(), 0.0);
      s = random_state();
      episode_len = 0;
    } else {
      s = s_next;
    }
  }
  return std::make_shared<GreedyLinearPolicy>(encoder, std::move(w));
}

}  // namespace

MountainCar::MountainCar(EnvironmentOptions options) : options_(options) {}

Observation MountainCar::reset(RngStream& rng) const { return Observation(rng.uniform(-0.6, -0.4), 0.0); }

Observation MountainCar::nominal_move(const Observation& s, ActionId a) const {
  check_action(a);
  double v = s.y() + 0.001 * (a.index - 1) - 0.0025 * std::cos(3.0 * s.x());
  v = std::clamp(v, -kMaxSpeed, kMaxSpeed);
  double x = s.x() + v;
  if (x <= kMinX) {
    x = kMinX;
    v = 0.0;
  } else if (x >= kMaxX) {
    x = kMaxX;
    v = 0.0;
  }
  return Observation(x, v);
}

Observation MountainCar::move(const Observation& s, ActionId a, RngStream&) const { return nominal_move(s, a); }

std::optional<int> MountainCar::goal_at(const Observation& s) const {
  if (s.x() <= kMinX) return 0;
  if (s.x() >= kMaxX) return 1;
  return std::nullopt;
}

std::vector<GvfQuestion> MountainCar::gvf_suite(RngStream&) const {
  static std::mutex mutex;
  static std::map<std::pair<long, std::uint64_t>, std::pair<PolicyPtr, PolicyPtr>> cache;
  std::pair<PolicyPtr, PolicyPtr> policies;
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_pair(options_.pretrain_steps, options_.pretrain_seed);
    auto it = cache.find(key);
    if (it == cache.end()) {
      RngStream rng(options_.pretrain_seed, Stream::kPretrain);
      it = cache.emplace(key, mountain_car_pretrain(*this, options_.pretrain_steps, rng)).first;
    }
    policies = it->second;
  }
  std::vector<GvfQuestion> suite(2);
  suite[0].name = "left-wall";
  suite[0].goal = 0;
  suite[0].policy = policies.first;
  suite[1].name = "hilltop";
  suite[1].goal = 1;
  suite[1].policy = policies.second;
  for (auto& q : suite) {
    q.gamma = gamma();
    q.cumulant = CumulantSchedule::constant(1.0);
  }
  return suite;
}

FeatureSet MountainCar::features() const {
  auto state = std::make_shared<features::TileCoder>(8, 8, car_bounds(), 3);
  auto reward = std::make_shared<features::TileCoder>(8, 2, car_bounds(), 3);
  return {state, reward};
}

std::pair<PolicyPtr, PolicyPtr> mountain_car_pretrain(const MountainCar& env, long steps, RngStream& rng) {
  PolicyPtr left = pretrain_one(env, 0, steps, rng);
  PolicyPtr hill = pretrain_one(env, 1, steps, rng);
  return {left, hill};
}

}  // namespace contaux::envs
