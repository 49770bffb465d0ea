#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "contaux/behavior/behavior.hpp"
#include "contaux/envs/tabular_tmaze.hpp"
#include "contaux/oracle/mdp.hpp"
#include "test_support.hpp"

namespace contaux::behavior {
namespace {

using testing::always;
using testing::cell;
using testing::tabular;

const optim::SgdOptimizer kSgd(0.1);

TEST(IntrinsicReward, SumPlusPenalty) {
  EXPECT_DOUBLE_EQ(intrinsic_reward(std::vector<double>{0, 0, 0, 0}, -0.01), -0.01);
  EXPECT_DOUBLE_EQ(intrinsic_reward(std::vector<double>{0.75, 0, 0, 0}, -0.01), 0.74);
}

TEST(IntrinsicReward, TendsToPenaltyForConvergedLearners) {
  learners::TbLearner l(tabular(3, 2), always(0, 2), learners::TraceRule::kTb, 0.0, optim::SgdOptimizer(0.5));
  std::vector<double> rewards;
  for (int e = 0; e < 1000; ++e) {
    for (int s = 0; s < 2; ++s) {
      const bool goal = s == 1;
      const double change =
          l.update(Transition{cell(s), ActionId(0), cell(s + 1), goal ? 3.0 : 0.0, goal ? 0.0 : 0.9}, {});
      ASSERT_GE(change, 0.0);
      rewards.push_back(intrinsic_reward(std::vector<double>{change}, -0.01));
    }
    l.end_episode();
  }
  double tail = 0.0;
  const std::size_t from = rewards.size() * 9 / 10;
  for (std::size_t i = from; i < rewards.size(); ++i) tail += rewards[i];
  tail /= static_cast<double>(rewards.size() - from);
  EXPECT_LE(std::abs(tail - (-0.01)), 2 * 0.01);
}

// One cell, two actions, two reward features; SF weights set by hand.
GpiBehavior two_action_gpi(double epsilon) {
  return GpiBehavior(tabular(1, 2), tabular(1, 2), {always(0, 2), always(1, 2)}, epsilon, 0.0, kSgd, kSgd);
}

void set_psi(GpiBehavior& b, std::size_t j, int action, std::array<double, 2> psi) {
  for (std::size_t m = 0; m < 2; ++m) b.sf(j).mutable_row(m)[static_cast<std::size_t>(action)] = psi[m];
}

TEST(Gpi, PicksMaxOverActionsAndPolicies) {
  auto b = two_action_gpi(0.0);
  set_psi(b, 0, 0, {1, 0});
  set_psi(b, 1, 0, {0, 1});
  set_psi(b, 0, 1, {0.5, 0.5});
  set_psi(b, 1, 1, {0.5, 0.5});
  b.reward_weights() = {1, 0};
  std::array<double, 2> q{};
  b.action_values(cell(0), q);
  EXPECT_DOUBLE_EQ(q[0], 1.0);
  EXPECT_DOUBLE_EQ(q[1], 0.5);
  RngStream rng(1, Stream::kExploration);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(b.act(cell(0), rng).index, 0);
}

TEST(Gpi, ZeroRewardWeightsUniform) {
  auto b = two_action_gpi(0.0);
  set_psi(b, 0, 0, {1, 0});
  std::array<double, 2> p{};
  b.probabilities(cell(0), p);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);
}

TEST(Gpi, FullExplorationUniform) {
  auto b = two_action_gpi(1.0);
  set_psi(b, 0, 0, {1, 0});
  b.reward_weights() = {1, 0};
  std::array<double, 2> p{};
  b.probabilities(cell(0), p);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);
}

TEST(Gpi, OptimisticInitValue) {
  const envs::TabularTMaze env;
  RngStream constants(2, Stream::kConstants);
  std::vector<PolicyPtr> policies;
  for (const auto& q : env.gvf_suite(constants)) policies.push_back(q.policy);
  const auto fs = env.features();
  GpiBehavior b(fs.state, fs.behavior_reward, policies, 0.1, 0.9, kSgd, kSgd);
  b.optimistic_init(10.0);
  for (int c = 0; c < envs::TabularTMaze::kNumCells; ++c) {
    std::array<double, 4> q{};
    b.action_values(env.cell_observation(c), q);
    for (double v : q) ASSERT_NEAR(v, 10.0, 1e-9);
    std::array<double, 4> p{};
    b.probabilities(env.cell_observation(c), p);
    for (double v : p) ASSERT_NEAR(v, 0.25, 1e-12);
  }
  b.optimistic_init(0.0);
  for (double w : b.reward_weights()) EXPECT_EQ(w, 0.0);
}

TEST(Gpi, RewardRegressionConverges) {
  auto b = two_action_gpi(0.1);
  const Transition t{cell(0), ActionId(1), cell(0), 2.5, 1.0};
  for (int i = 0; i < 10000; ++i) b.update(t);
  EXPECT_NEAR(b.reward_prediction(cell(0), ActionId(1)), 2.5, 1e-3);
}

TEST(Gpi, RewardPredictionTracksDrop) {
  auto b = two_action_gpi(0.1);
  for (int i = 0; i < 1000; ++i) b.update(Transition{cell(0), ActionId(0), cell(0), 4.0, 1.0});
  double prev = b.reward_prediction(cell(0), ActionId(0));
  for (int i = 0; i < 200; ++i) {
    b.update(Transition{cell(0), ActionId(0), cell(0), 1.0, 1.0});
    const double now = b.reward_prediction(cell(0), ActionId(0));
    ASSERT_LE(now, prev);
    prev = now;
  }
  EXPECT_NEAR(prev, 1.0, 1e-3);
}

TEST(Gpi, GreedyChoiceAttainsMaxAndIsScaleInvariant) {
  RngStream rng(3, Stream::kConstants);
  for (int trial = 0; trial < 200; ++trial) {
    GpiBehavior b(tabular(1, 4), tabular(1, 4), {always(0, 4), always(1, 4), always(2, 4)}, 0.0, 0.0, kSgd, kSgd);
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t m = 0; m < 4; ++m) {
        for (double& w : b.sf(j).mutable_row(m)) w = rng.normal(0.0, 1.0);
      }
    }
    for (double& w : b.reward_weights()) w = rng.normal(0.0, 1.0);
    std::array<double, 4> q{};
    b.action_values(cell(0), q);
    const double best = *std::max_element(q.begin(), q.end());
    std::array<double, 4> p{};
    b.probabilities(cell(0), p);
    for (int a = 0; a < 4; ++a) {
      if (p[static_cast<std::size_t>(a)] > 0.0) ASSERT_EQ(q[static_cast<std::size_t>(a)], best);
    }
    const double c = rng.uniform(0.01, 100.0);
    for (double& w : b.reward_weights()) w *= c;
    std::array<double, 4> p_scaled{};
    b.probabilities(cell(0), p_scaled);
    for (int a = 0; a < 4; ++a) ASSERT_EQ(p[static_cast<std::size_t>(a)] > 0.0, p_scaled[static_cast<std::size_t>(a)] > 0.0);
  }
}

// Exact SFs and reward weights: the GPI policy's value dominates every
// constituent policy's action values.
TEST(Gpi, ImprovesOnConstituentPolicies) {
  RngStream rng(4, Stream::kConstants);
  for (int trial = 0; trial < 20; ++trial) {
    oracle::RandomMdpOptions opts;
    opts.states = 3 + static_cast<int>(rng.index(10));
    opts.actions = 2;
    opts.features = 2;
    auto m = oracle::random_mdp(opts, rng);
    const int n = m.num_states;
    const int na = m.num_actions;
    const int nsa = m.num_pairs();
    m.x = Eigen::MatrixXd::Identity(nsa, nsa);
    std::array<Eigen::MatrixXd, 2> pis{m.pi, Eigen::MatrixXd::Zero(n, nsa)};
    const Eigen::MatrixXd rows = oracle::random_stochastic(n, na, rng);
    for (int s = 0; s < n; ++s) {
      for (int a = 0; a < na; ++a) pis[1](s, m.sa(s, a)) = rows(s, a);
    }
    // Encoders index a * n + s; the model indexes s * A + a.
    auto enc = tabular(n, na);
    auto enc_index = [n](int s, int a) { return a * n + s; };
    std::vector<PolicyPtr> policies;
    for (const auto& pi : pis) {
      std::vector<std::vector<double>> table(static_cast<std::size_t>(n), std::vector<double>(na));
      for (int s = 0; s < n; ++s) {
        for (int a = 0; a < na; ++a) table[s][a] = pi(s, m.sa(s, a));
      }
      policies.push_back(testing::table_policy(table));
    }
    GpiBehavior b(enc, enc, policies, 0.0, 0.0, kSgd, kSgd);
    std::array<Eigen::VectorXd, 2> q_j;
    for (std::size_t j = 0; j < 2; ++j) {
      auto mj = m;
      mj.pi = pis[j];
      const Eigen::MatrixXd psi = oracle::true_sf(mj);
      q_j[j] = oracle::true_q(mj);
      for (int s = 0; s < n; ++s) {
        for (int a = 0; a < na; ++a) {
          for (int s2 = 0; s2 < n; ++s2) {
            for (int a2 = 0; a2 < na; ++a2) {
              b.sf(j).mutable_row(static_cast<std::size_t>(enc_index(s2, a2)))[enc_index(s, a)] =
                  psi(m.sa(s, a), m.sa(s2, a2));
            }
          }
        }
      }
    }
    for (int s = 0; s < n; ++s) {
      for (int a = 0; a < na; ++a) b.reward_weights()[static_cast<std::size_t>(enc_index(s, a))] = m.r(m.sa(s, a));
    }
    Eigen::MatrixXd gpi_pi = Eigen::MatrixXd::Zero(n, nsa);
    for (int s = 0; s < n; ++s) {
      std::array<double, 4> p{};
      b.probabilities(cell(s), std::span<double>(p.data(), na));
      for (int a = 0; a < na; ++a) gpi_pi(s, m.sa(s, a)) = p[static_cast<std::size_t>(a)];
    }
    auto mg = m;
    mg.pi = gpi_pi;
    const Eigen::VectorXd q_gpi = oracle::true_q(mg);
    for (int i = 0; i < nsa; ++i) {
      ASSERT_GE(q_gpi(i), std::max(q_j[0](i), q_j[1](i)) - 1e-9);
    }
  }
}

TEST(Esarsa, ZeroRewardZeroValuesNoChange) {
  EsarsaControl e(tabular(3, 2), 0.1, 0.0, kSgd);
  e.update(Transition{cell(0), ActionId(0), cell(1), 0.0, 1.0});
  for (double w : e.weights()) EXPECT_EQ(w, 0.0);
}

TEST(Esarsa, TerminalStep) {
  EsarsaControl e(tabular(3, 2), 0.1, 0.0, kSgd);
  e.update(Transition{cell(0), ActionId(1), cell(1), 1.0, 0.0});
  EXPECT_DOUBLE_EQ(e.value(cell(0), ActionId(1)), 0.1);
}

TEST(Esarsa, GreedyProbability) {
  EsarsaControl e(tabular(1, 4), 0.1, 0.0, kSgd);
  e.update(Transition{cell(0), ActionId(2), cell(0), 1.0, 0.0});
  std::array<double, 4> p{};
  e.probabilities(cell(0), p);
  EXPECT_NEAR(p[2], 0.925, 1e-12);
}

TEST(Esarsa, OptimisticInit) {
  const envs::TabularTMaze env;
  EsarsaControl e(env.features().state, 0.1, 0.9, kSgd);
  e.optimistic_init(10.0);
  EXPECT_DOUBLE_EQ(e.value(env.start(), ActionId(0)), 10.0);
}

TEST(Behavior, RandomIsUniform) {
  RandomBehavior b(3);
  std::array<double, 3> p{};
  b.probabilities(cell(0), p);
  for (double v : p) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
  RngStream rng(5, Stream::kExploration);
  double prob = 0.0;
  b.act(cell(0), rng, &prob);
  EXPECT_DOUBLE_EQ(prob, 1.0 / 3.0);
}

}  // namespace
}  // namespace contaux::behavior
