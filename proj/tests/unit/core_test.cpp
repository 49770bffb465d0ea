#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "contaux/cumulant.hpp"
#include "contaux/gvf.hpp"
#include "contaux/policy.hpp"
#include "contaux/rng.hpp"
#include "contaux/sparse.hpp"

namespace contaux {
namespace {

TEST(Cumulant, ConstantSampleIsValue) {
  RngStream rng(1, Stream::kCumulantBase);
  const auto c = CumulantSchedule::constant(7.0);
  EXPECT_EQ(c.sample(rng), 7.0);
  EXPECT_EQ(CumulantSchedule::constant(-3.0).expected(), -3.0);
}

TEST(Cumulant, DrifterStartsAtInitialValue) {
  RngStream rng(1, Stream::kCumulantBase);
  const auto d = CumulantSchedule::drifter(0.01, 1.0);
  EXPECT_EQ(d.sample(rng), 1.0);
  EXPECT_EQ(d.expected(), 1.0);
}

TEST(Cumulant, DistractorSampleMean) {
  RngStream rng(2, Stream::kCumulantBase);
  const auto d = CumulantSchedule::distractor(1.0, 25.0);
  double sum = 0.0;
  constexpr int kDraws = 1000000;
  for (int i = 0; i < kDraws; ++i) sum += d.sample(rng);
  EXPECT_NEAR(sum / kDraws, 1.0, 0.02);
  EXPECT_EQ(d.expected(), 1.0);
}

TEST(Cumulant, ConstantUnchangedByStepping) {
  RngStream rng(3, Stream::kCumulantBase);
  auto c = CumulantSchedule::constant(4.0);
  auto dist = CumulantSchedule::distractor(1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    c.step(rng);
    dist.step(rng);
  }
  EXPECT_EQ(c.expected(), 4.0);
  EXPECT_EQ(dist.expected(), 1.0);
}

TEST(Cumulant, DrifterRandomWalkMoments) {
  constexpr int kRuns = 10000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int r = 0; r < kRuns; ++r) {
    RngStream rng(static_cast<std::uint64_t>(r), Stream::kCumulantBase);
    auto d = CumulantSchedule::drifter(0.01, 1.0);
    for (int t = 0; t < 1000; ++t) d.step(rng);
    sum += d.expected();
    sum_sq += d.expected() * d.expected();
  }
  const double mean = sum / kRuns;
  const double var = sum_sq / kRuns - mean * mean;
  EXPECT_NEAR(mean, 1.0, 0.1);
  EXPECT_NEAR(var, 10.0, 1.0);
}

TEST(Cumulant, DrifterInjectedIncrements) {
  auto d = CumulantSchedule::drifter(0.01, 1.0);
  d.advance(0.1);
  d.advance(-0.04);
  EXPECT_NEAR(d.expected(), 1.06, 1e-12);
}

TEST(Cumulant, DrifterReproducible) {
  RngStream a(9, Stream::kCumulantBase);
  RngStream b(9, Stream::kCumulantBase);
  auto da = CumulantSchedule::drifter(0.01);
  auto db = CumulantSchedule::drifter(0.01);
  for (int t = 0; t < 500; ++t) {
    da.step(a);
    db.step(b);
    ASSERT_EQ(da.expected(), db.expected());
  }
}

TEST(Rng, SameSeedAndStreamSameSequence) {
  RngStream a(42, Stream::kEnvironment);
  RngStream b(42, Stream::kEnvironment);
  RngStream c(42, Stream::kExploration);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    ASSERT_EQ(x, b.next_u64());
    differs = differs || x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, UniformAndIndexRanges) {
  RngStream rng(5, Stream::kEnvironment);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.index(7), 7u);
  }
}

TEST(Policy, EpsilonGreedyProbabilities) {
  const std::array<double, 4> scores{1.0, 3.0, 2.0, 0.0};
  std::array<double, 4> p{};
  epsilon_greedy_probabilities(scores, 0.1, p);
  EXPECT_NEAR(p[1], 0.925, 1e-12);
  EXPECT_NEAR(p[0], 0.025, 1e-12);
  EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, 1e-12);
}

TEST(Policy, GreedyTiesSplitMass) {
  const std::array<double, 4> scores{2.0, 2.0, 1.0, 2.0};
  std::array<double, 4> p{};
  epsilon_greedy_probabilities(scores, 0.2, p);
  EXPECT_NEAR(p[0], 0.8 / 3 + 0.05, 1e-12);
  EXPECT_NEAR(p[2], 0.05, 1e-12);
  greedy_probabilities(scores, p);
  EXPECT_NEAR(p[3], 1.0 / 3, 1e-12);
  EXPECT_EQ(p[2], 0.0);
}

TEST(Policy, SampleFollowsProbabilities) {
  RngStream rng(8, Stream::kExploration);
  const std::array<double, 3> probs{0.2, 0.0, 0.8};
  std::array<int, 3> counts{};
  for (int i = 0; i < 100000; ++i) ++counts[static_cast<std::size_t>(sample_index(probs, rng))];
  EXPECT_EQ(counts[1], 0);
  EXPECT_NEAR(counts[0] / 100000.0, 0.2, 0.01);
}

TEST(Gvf, DiscountZeroOnlyOnOwnGoal) {
  GvfQuestion q;
  q.gamma = 0.9;
  EXPECT_EQ(q.discount(true), 0.0);
  EXPECT_EQ(q.discount(false), 0.9);
  EXPECT_EQ(q.interest_at(Observation(0, 0), ActionId(0)), 1.0);
}

TEST(Sparse, DotAndDenseRoundTrip) {
  const std::vector<double> dense{0.0, 2.0, 0.0, -1.0};
  const auto s = SparseVector::from_dense(dense);
  EXPECT_EQ(s.nnz(), 2u);
  EXPECT_EQ(s.to_dense(), dense);
  EXPECT_EQ(s.dot(std::vector<double>{1, 1, 1, 1}), 1.0);
  EXPECT_EQ(s.l1(), 3.0);
}

}  // namespace
}  // namespace contaux
