#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace contaux {

/// Named sub-streams split off a run's master seed. Each consumer draws from
/// its own stream so that adding draws in one component leaves the others'
/// sequences untouched.
enum class Stream : std::uint64_t {
  kEnvironment = 1,
  kExploration = 2,
  kReplay = 3,
  kConstants = 4,
  kEvaluation = 5,
  kPretrain = 6,
  kCumulantBase = 100,  // + GVF index
};

std::uint64_t splitmix64(std::uint64_t x);

/// Derives a child seed from (seed, salt); used for per-run seeds and streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);
  RngStream(std::uint64_t seed, Stream stream) : RngStream(seed, static_cast<std::uint64_t>(stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal(double mean, double stddev);
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace contaux
