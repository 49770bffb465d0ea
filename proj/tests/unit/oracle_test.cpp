#include <gtest/gtest.h>

#include <cmath>

#include "contaux/envs/continuous_tmaze.hpp"
#include "contaux/envs/tabular_tmaze.hpp"
#include "contaux/oracle/checks.hpp"
#include "contaux/oracle/evaluation.hpp"
#include "contaux/oracle/mdp.hpp"
#include "contaux/oracle/metrics.hpp"

namespace contaux::oracle {
namespace {

// States 0, 1, 2 in a line; the single action moves right; entering 2 pays `c`.
TabularMdpModel chain(double c, double gamma) {
  TabularMdpModel m;
  m.num_states = 3;
  m.num_actions = 1;
  m.p = Eigen::MatrixXd::Zero(3, 3);
  m.p(0, 1) = 1.0;
  m.p(1, 2) = 1.0;
  m.p(2, 2) = 1.0;
  m.p_gamma = Eigen::MatrixXd::Zero(3, 3);
  m.p_gamma(0, 1) = gamma;
  m.pi = Eigen::MatrixXd::Identity(3, 3);
  m.r = Eigen::Vector3d(0.0, c, 0.0);
  m.x = Eigen::MatrixXd::Identity(3, 3);
  m.d = Eigen::Vector3d(0.5, 0.5, 0.0);
  return m;
}

TEST(TrueQ, ChainGeometricSeries) {
  const auto q = true_q(chain(5.0, 0.9));
  EXPECT_NEAR(q(0), 4.5, 1e-12);
  EXPECT_NEAR(q(1), 5.0, 1e-12);
}

TEST(TrueQ, ZeroRewardAndOneStep) {
  EXPECT_EQ(true_q(chain(0.0, 0.9)).norm(), 0.0);
  RngStream rng(1, Stream::kConstants);
  auto m = random_mdp({}, rng);
  m.p_gamma.setZero();
  EXPECT_LT((true_q(m) - m.r).norm(), 1e-12);
}

TEST(TrueQ, SingularSystemReported) {
  TabularMdpModel m;
  m.num_states = 1;
  m.num_actions = 1;
  m.p = Eigen::MatrixXd::Ones(1, 1);
  m.p_gamma = m.p;
  m.pi = Eigen::MatrixXd::Ones(1, 1);
  m.r = Eigen::VectorXd::Ones(1);
  m.x = Eigen::MatrixXd::Ones(1, 1);
  m.d = Eigen::VectorXd::Ones(1);
  EXPECT_THROW(true_q(m), SingularSystemError);
}

TEST(TrueSf, RealizableIdentity) {
  RngStream rng(2, Stream::kConstants);
  for (int i = 0; i < 50; ++i) {
    RandomMdpOptions o;
    o.states = 2 + static_cast<int>(rng.index(8));
    o.actions = 1 + static_cast<int>(rng.index(3));
    o.features = 1 + static_cast<int>(rng.index(4));
    const auto m = random_mdp(o, rng);
    // r = X w*; recover w* by least squares.
    const Eigen::VectorXd w = m.x.colPivHouseholderQr().solve(m.r);
    ASSERT_LT((m.x * w - m.r).cwiseAbs().maxCoeff(), 1e-9);
    ASSERT_LT((true_sf(m) * w - true_q(m)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(TrueSf, TabularRowSums) {
  RngStream rng(3, Stream::kConstants);
  RandomMdpOptions o;
  o.gamma = 0.8;
  auto m = random_mdp(o, rng);
  const Eigen::MatrixXd psi = true_sf(m, Eigen::MatrixXd::Identity(m.num_pairs(), m.num_pairs()));
  for (int i = 0; i < m.num_pairs(); ++i) EXPECT_NEAR(psi.row(i).sum(), 1.0 / (1.0 - 0.8), 1e-10);
  m.x.setZero();
  EXPECT_EQ(true_sf(m).norm(), 0.0);
}

TEST(Lstd, LambdaOneTabularIsTrueQ) {
  RngStream rng(4, Stream::kConstants);
  auto m = random_mdp({}, rng);
  m.x = Eigen::MatrixXd::Identity(m.num_pairs(), m.num_pairs());
  EXPECT_LT((m.x * lstd_solution(m, 1.0) - true_q(m)).norm(), 1e-10);
  m.r.setZero();
  EXPECT_LT(lstd_solution(m, 0.5).norm(), 1e-14);
}

TEST(Mspbe, ZeroAtTdFixedPoint) {
  RngStream rng(5, Stream::kConstants);
  for (int i = 0; i < 20; ++i) {
    const auto m = random_mdp({}, rng);
    EXPECT_LT(mspbe(m, lstd_solution(m, 0.0)), 1e-10);
  }
  auto m = chain(0.0, 0.9);
  EXPECT_EQ(mspbe(m, Eigen::VectorXd::Zero(3)), 0.0);
}

TEST(Mspbe, WeightingChangesMinimizerWithAliasing) {
  auto m = chain(1.0, 0.9);
  m.x = Eigen::MatrixXd::Ones(3, 1);
  m.d = Eigen::Vector3d(0.8, 0.1, 0.1);
  const auto w1 = lstd_solution(m, 0.0);
  m.d = Eigen::Vector3d(0.1, 0.8, 0.1);
  const auto w2 = lstd_solution(m, 0.0);
  EXPECT_GT(std::abs(w1(0) - w2(0)), 1e-3);
}

TEST(Metrics, Rmsve) {
  const std::vector<double> q{1.0, 2.0};
  const std::vector<double> w{0.5, 0.5};
  EXPECT_EQ(rmsve(q, q, w), 0.0);
  EXPECT_NEAR(rmsve(std::vector<double>{3.0, 4.0}, std::vector<double>{0.0, 0.0}, w), std::sqrt(12.5), 1e-12);
  EXPECT_NEAR(rmsve(std::vector<double>{-6.0, 8.0}, std::vector<double>{0.0, 0.0}, w),
              2.0 * std::sqrt(12.5), 1e-12);
}

TEST(Metrics, TotalError) {
  EXPECT_EQ(total_error({{0.0, 0.0}, {0.0, 0.0}}), 0.0);
  EXPECT_EQ(total_error({{1.0, 2.0}, {3.0, 4.0}}), 10.0);
  EXPECT_EQ(last_fraction_total_error(std::vector<std::vector<double>>(100, {1.0}), 0.1), 10.0);
}

TEST(Metrics, Statistics) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(mean(v), 2.5);
  EXPECT_NEAR(standard_error(v), std::sqrt(5.0 / 3.0 / 4.0), 1e-12);
  EXPECT_NEAR(pooled_standard_error(v, v), std::sqrt(2.0) * standard_error(v), 1e-12);
  EXPECT_NEAR(fitted_slope(std::vector<double>{0, 1, 2}, std::vector<double>{1, 3, 5}), 2.0, 1e-12);
}

TEST(Stationary, UniqueFromDifferentStarts) {
  RngStream rng(6, Stream::kConstants);
  const Eigen::MatrixXd p = random_stochastic(7, 7, rng);
  Eigen::VectorXd init = Eigen::VectorXd::Zero(7);
  init(3) = 1.0;
  const auto a = stationary_distribution(p);
  const auto b = stationary_distribution(p, init);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(a.sum(), 1.0, 1e-12);
  EXPECT_LT((a.transpose() * p - a.transpose()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Lemma1, RandomTrialsNoViolations) {
  RngStream rng(7, Stream::kConstants);
  const auto r = check_lemma1(1000, rng);
  EXPECT_EQ(r.trials, 1000);
  EXPECT_EQ(r.violations, 0);
  EXPECT_LE(r.max_ratio, 1.0 + 1e-9);
}

TEST(Lemma1, SingleStateIsTight) {
  RngStream rng(8, Stream::kConstants);
  const auto r = check_lemma1(200, rng, 1);
  EXPECT_EQ(r.violations, 0);
  EXPECT_NEAR(r.max_ratio, 1.0, 1e-9);
}

TEST(Prop1, ErrorDecaysAtFastRate) {
  RngStream rng(9, Stream::kConstants);
  Prop1Options o;
  o.seeds = 30;
  const auto r = check_prop1(o, rng);
  EXPECT_TRUE(r.monotone);
  EXPECT_LE(r.loglog_slope, -0.8);
  EXPECT_LE(r.scaled_slope, 0.05);
}

TEST(Prop1, MoreOffPolicyKeepsExponent) {
  Prop1Options a;
  Prop1Options b;
  b.behavior_skew = 2.0;
  RngStream rng_a(10, Stream::kConstants);
  RngStream rng_b(10, Stream::kConstants);
  const auto ra = check_prop1(a, rng_a);
  const auto rb = check_prop1(b, rng_b);
  EXPECT_GT(rb.rho_max, ra.rho_max);
  EXPECT_NEAR(ra.loglog_slope, rb.loglog_slope, 0.3);
}

TEST(Prop1, SingleSampleFinite) {
  Prop1Options o;
  o.horizons = {1, 2};
  o.seeds = 3;
  RngStream rng(11, Stream::kConstants);
  const auto r = check_prop1(o, rng);
  EXPECT_TRUE(std::isfinite(r.median_error[0]));
}

TEST(AppC, CasesOneAndTwoAgreeCaseThreeDiffers) {
  for (int c = 1; c <= 3; ++c) {
    RngStream rng(12, Stream::kConstants);
    const auto r = check_appc(c, 100, rng);
    EXPECT_TRUE(r.passed()) << "case " << c << " max " << r.max_gap << " min " << r.min_gap;
    EXPECT_EQ(r.instances, 100);
  }
}

GvfQuestion unit_cumulant(GvfQuestion q) {
  q.cumulant = CumulantSchedule::constant(1.0);
  return q;
}

TEST(MonteCarlo, MatchesTabularOracle) {
  const envs::TabularTMaze env;
  RngStream constants(13, Stream::kConstants);
  const auto suite = env.gvf_suite(constants);
  for (int g = 0; g < 4; ++g) {
    const auto gvf = unit_cumulant(suite[static_cast<std::size_t>(g)]);
    const auto m = tabular_gvf_model(env, gvf);
    const auto q = true_q(m);
    std::vector<StateAction> points;
    for (int c = 0; c < envs::TabularTMaze::kNumCells; c += 3) {
      for (int a = 0; a < 4; ++a) points.push_back({env.cell_observation(c), ActionId(a)});
    }
    RngStream rng(14, Stream::kEvaluation);
    const auto mc = monte_carlo_truth(env, gvf, points, 10000, rng);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int c = env.cell_index(points[i].s);
      if (env.goal_at(points[i].s)) continue;
      const double exact = q(m.sa(c, points[i].a.index));
      ASSERT_LE(std::abs(mc.value[i] - exact), 3.0 * mc.standard_error[i] + 1e-12)
          << "goal " << g << " cell " << c << " action " << points[i].a.index;
    }
  }
}

TEST(MonteCarlo, DeterministicPathIsExact) {
  const envs::TabularTMaze env;
  RngStream constants(15, Stream::kConstants);
  auto gvf = env.gvf_suite(constants)[1];
  gvf.cumulant = CumulantSchedule::constant(3.0);
  // From the top-right neighbour moving right the goal is one step away.
  const std::vector<StateAction> points{{Observation(5, 6), ActionId(3)}};
  RngStream rng(16, Stream::kEvaluation);
  EXPECT_DOUBLE_EQ(monte_carlo_truth(env, gvf, points, 1, rng).value[0], 3.0);
  gvf.cumulant = CumulantSchedule::constant(0.0);
  EXPECT_EQ(monte_carlo_truth(env, gvf, points, 5, rng).value[0], 0.0);
}

TEST(Visitation, FixedBehaviorReachesGoalNeighbours) {
  const envs::TabularTMaze env;
  RngStream constants(17, Stream::kConstants);
  const auto suite = env.gvf_suite(constants);
  const auto d = tabular_behavior_visitation(env, suite);
  EXPECT_NEAR(d.sum(), 1.0, 1e-10);
  EXPECT_GE(d.minCoeff(), 0.0);
  for (const auto& nb : {Observation(0, 5), Observation(6, 5), Observation(0, 3), Observation(6, 3)}) {
    double cell_mass = 0.0;
    for (int a = 0; a < 4; ++a) cell_mass += d(env.cell_index(nb) * 4 + a);
    EXPECT_GT(cell_mass, 0.0);
  }
  Eigen::VectorXd init = Eigen::VectorXd::Zero(d.size());
  init(0) = 1.0;
  EXPECT_LT((tabular_behavior_visitation(env, suite, init) - d).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Evaluation, WeightsNormalized) {
  const envs::ContinuousTMaze env;
  RngStream constants(18, Stream::kConstants);
  const auto suite = env.gvf_suite(constants);
  EvaluationOptions o;
  o.weighting = Weighting::kUniform;
  o.mc_rollouts = 2;
  o.visitation_steps = 1000;
  const auto sets = build_evaluation(env, suite, o);
  ASSERT_EQ(sets->size(), 4u);
  for (const auto& set : *sets) {
    EXPECT_NEAR(set.weight_sum(), 1.0, 1e-12);
    for (const auto& p : set.points) {
      ASSERT_GT(p.weight, 0.0);
      ASSERT_FALSE(env.goal_at(p.s).has_value());
    }
  }
  EXPECT_EQ(parse_weighting("uniform-sa"), Weighting::kUniformStateAction);
  EXPECT_EQ(to_string(Weighting::kInterest), "interest");
  EXPECT_THROW(parse_weighting("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace contaux::oracle
