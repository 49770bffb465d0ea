#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "contaux/envs/environment.hpp"
#include "contaux/gvf.hpp"
#include "contaux/learners/learner.hpp"
#include "contaux/oracle/mdp.hpp"

namespace contaux::envs {
class TabularTMaze;
}

namespace contaux::oracle {

/// How evaluation state-action pairs are weighted.
enum class Weighting {
  kBehavior,  // d_mu of the fixed behavior, restricted to target actions
  kUniform,   // uniform over states, pi_j over actions
  kUniformStateAction,
  kInterest,  // visitation of pi_j weighted by the GVF's interest
};

Weighting parse_weighting(const std::string& name);
std::string to_string(Weighting w);

struct StateAction {
  Observation s;
  ActionId a;
};

struct MonteCarloTruth {
  std::vector<double> value;
  std::vector<double> standard_error;
};

/// Rolls out gvf.policy from each (s, a) until the GVF's own goal. The
/// estimate is mean(prod of discounts up to goal entry) * expected cumulant.
/// Rollouts longer than `step_cap` contribute 0.
MonteCarloTruth monte_carlo_truth(const envs::Environment& env, const GvfQuestion& gvf,
                                  std::span<const StateAction> points, int rollouts, RngStream& rng,
                                  long step_cap = 1000);

/// Exact matrices of one Tabular TMaze GVF with a unit cumulant.
TabularMdpModel tabular_gvf_model(const envs::TabularTMaze& env, const GvfQuestion& gvf);

/// Stationary d_mu(cell, a) of the fixed behavior on the Tabular TMaze,
/// computed on the (cell, target goal) chain with restarts folded in.
/// Returned with the model's pair indexing (cell * A + a).
Eigen::VectorXd tabular_behavior_visitation(const envs::TabularTMaze& env, std::span<const GvfQuestion> gvfs,
                                            Eigen::VectorXd init = {});

struct EvalPoint {
  Observation s;
  ActionId a;
  double weight = 0.0;      // normalized over the set
  double unit_value = 0.0;  // value of the GVF with a unit cumulant
};

/// Weighted evaluation pairs for one GVF.
struct EvaluationSet {
  std::vector<EvalPoint> points;

  /// RMSVE of `learner` against unit_value * expected_cumulant.
  double rmsve(const learners::GvfLearner& learner, double expected_cumulant) const;
  double weight_sum() const;
};

struct EvaluationOptions {
  Weighting weighting = Weighting::kBehavior;
  int mc_rollouts = 100;          // per point in stochastic environments
  long visitation_steps = 200000; // empirical d_mu / pi_j visitation
  std::uint64_t seed = 12345;
};

/// One evaluation set per GVF. Results are cached per (environment, options)
/// for the lifetime of the process.
std::shared_ptr<const std::vector<EvaluationSet>> build_evaluation(const envs::Environment& env,
                                                                   std::span<const GvfQuestion> gvfs,
                                                                   const EvaluationOptions& options);

}  // namespace contaux::oracle
