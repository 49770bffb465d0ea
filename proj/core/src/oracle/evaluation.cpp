#include "contaux/oracle/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "contaux/behavior/behavior.hpp"
#include "contaux/envs/continuous_tmaze.hpp"
#include "contaux/envs/mountain_car.hpp"
#include "contaux/envs/open_world.hpp"
#include "contaux/envs/tabular_tmaze.hpp"

namespace contaux::oracle {

Weighting parse_weighting(const std::string& name) {
  if (name == "behavior") return Weighting::kBehavior;
  if (name == "uniform") return Weighting::kUniform;
  if (name == "uniform-sa") return Weighting::kUniformStateAction;
  if (name == "interest") return Weighting::kInterest;
  throw std::invalid_argument("unknown weighting '" + name + "'");
}

std::string to_string(Weighting w) {
  switch (w) {
    case Weighting::kBehavior: return "behavior";
    case Weighting::kUniform: return "uniform";
    case Weighting::kUniformStateAction: return "uniform-sa";
    case Weighting::kInterest: return "interest";
  }
  return "?";
}

MonteCarloTruth monte_carlo_truth(const envs::Environment& env, const GvfQuestion& gvf,
                                  std::span<const StateAction> points, int rollouts, RngStream& rng,
                                  long step_cap) {
  if (rollouts < 1) throw std::invalid_argument("monte_carlo_truth: rollouts must be >= 1");
  MonteCarloTruth out;
  out.value.reserve(points.size());
  out.standard_error.reserve(points.size());
  const double c = gvf.cumulant.expected();
  for (const StateAction& p : points) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int r = 0; r < rollouts; ++r) {
      Observation s = p.s;
      ActionId a = p.a;
      double product = 1.0;
      double g = 0.0;
      for (long k = 0; k < step_cap; ++k) {
        const Observation next = env.move(s, a, rng);
        const auto goal = env.goal_at(next);
        if (goal && *goal == gvf.goal) {
          g = product * c;
          break;
        }
        product *= gvf.discount(false);
        s = next;
        a = gvf.policy->sample(s, rng);
      }
      sum += g;
      sum_sq += g * g;
    }
    const double n = rollouts;
    const double m = sum / n;
    out.value.push_back(m);
    const double var = rollouts > 1 ? std::max(0.0, (sum_sq - n * m * m) / (n - 1.0)) : 0.0;
    out.standard_error.push_back(std::sqrt(var / n));
  }
  return out;
}

TabularMdpModel tabular_gvf_model(const envs::TabularTMaze& env, const GvfQuestion& gvf) {
  const int n = envs::TabularTMaze::kNumCells;
  const int actions = env.num_actions();
  TabularMdpModel m;
  m.num_states = n;
  m.num_actions = actions;
  m.p = Eigen::MatrixXd::Zero(n * actions, n);
  m.p_gamma = Eigen::MatrixXd::Zero(n * actions, n);
  m.pi = Eigen::MatrixXd::Zero(n, n * actions);
  m.r = Eigen::VectorXd::Zero(n * actions);
  m.x = Eigen::MatrixXd::Identity(n * actions, n * actions);
  std::array<double, kMaxActions> probs{};
  for (int c = 0; c < n; ++c) {
    const Observation s = env.cell_observation(c);
    gvf.policy->probabilities(s, std::span<double>(probs.data(), static_cast<std::size_t>(actions)));
    for (int a = 0; a < actions; ++a) {
      const int sa = m.sa(c, a);
      m.pi(c, sa) = probs[static_cast<std::size_t>(a)];
      const Observation next = env.nominal_move(s, ActionId(a));
      const int nc = env.cell_index(next);
      const auto goal = env.goal_at(next);
      const bool own = goal && *goal == gvf.goal;
      m.p(sa, nc) = 1.0;
      m.p_gamma(sa, nc) = gvf.discount(own);
      m.r[sa] = own ? 1.0 : 0.0;
    }
  }
  return m;
}

Eigen::VectorXd tabular_behavior_visitation(const envs::TabularTMaze& env, std::span<const GvfQuestion> gvfs,
                                            Eigen::VectorXd init) {
  const int n = envs::TabularTMaze::kNumCells;
  const int goals = static_cast<int>(gvfs.size());
  const int actions = env.num_actions();
  const int size = n * goals;
  auto index = [goals](int cell, int g) { return cell * goals + g; };

  // Restart: start cell, target among the nearest goals uniformly.
  const Observation start = env.start();
  double best = INFINITY;
  for (int g = 0; g < goals; ++g) best = std::min(best, env.goal_distance(start, gvfs[g].goal));
  std::vector<int> nearest;
  for (int g = 0; g < goals; ++g) {
    if (env.goal_distance(start, gvfs[g].goal) <= best + 1e-9) nearest.push_back(g);
  }
  Eigen::RowVectorXd restart = Eigen::RowVectorXd::Zero(size);
  for (int g : nearest) restart[index(env.cell_index(start), g)] = 1.0 / static_cast<double>(nearest.size());

  Eigen::MatrixXd chain = Eigen::MatrixXd::Zero(size, size);
  std::array<double, kMaxActions> probs{};
  for (int c = 0; c < n; ++c) {
    const Observation s = env.cell_observation(c);
    for (int g = 0; g < goals; ++g) {
      const int row = index(c, g);
      if (env.goal_at(s)) {
        chain.row(row) = restart;
        continue;
      }
      gvfs[g].policy->probabilities(s, std::span<double>(probs.data(), static_cast<std::size_t>(actions)));
      for (int a = 0; a < actions; ++a) {
        const double p = probs[static_cast<std::size_t>(a)];
        if (p == 0.0) continue;
        const Observation next = env.nominal_move(s, ActionId(a));
        if (env.goal_at(next)) {
          chain.row(row) += p * restart;
        } else {
          chain(row, index(env.cell_index(next), g)) += p;
        }
      }
    }
  }
  const Eigen::VectorXd stationary = stationary_distribution(chain, std::move(init));
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n * actions);
  for (int c = 0; c < n; ++c) {
    const Observation s = env.cell_observation(c);
    for (int g = 0; g < goals; ++g) {
      const double mass = stationary[index(c, g)];
      if (mass == 0.0) continue;
      gvfs[g].policy->probabilities(s, std::span<double>(probs.data(), static_cast<std::size_t>(actions)));
      for (int a = 0; a < actions; ++a) d[c * actions + a] += mass * probs[static_cast<std::size_t>(a)];
    }
  }
  return d;
}

double EvaluationSet::rmsve(const learners::GvfLearner& learner, double expected_cumulant) const {
  double total = 0.0;
  double mass = 0.0;
  for (const EvalPoint& p : points) {
    const double e = learner.predict(p.s, p.a) - p.unit_value * expected_cumulant;
    total += p.weight * e * e;
    mass += p.weight;
  }
  return mass > 0 ? std::sqrt(total / mass) : 0.0;
}

double EvaluationSet::weight_sum() const {
  double s = 0.0;
  for (const EvalPoint& p : points) s += p.weight;
  return s;
}

namespace {

// Candidate evaluation states plus a map from any state to its bin.
struct StateGrid {
  std::vector<Observation> states;
  std::function<int(const Observation&)> bin;  // -1 when outside
};

StateGrid make_grid(const envs::Environment& env) {
  StateGrid grid;
  if (const auto* tm = dynamic_cast<const envs::ContinuousTMaze*>(&env)) {
    for (const Observation& s : tm->hallway_grid(0.04)) {
      if (!env.goal_at(s)) grid.states.push_back(s);
    }
    grid.bin = [states = grid.states](const Observation& s) {
      int best = -1;
      double best_d = INFINITY;
      for (std::size_t i = 0; i < states.size(); ++i) {
        const double d = std::hypot(states[i].x() - s.x(), states[i].y() - s.y());
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(i);
        }
      }
      return best;
    };
    return grid;
  }
  int cells = 0;
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  if (dynamic_cast<const envs::Open2DWorld*>(&env)) {
    cells = 20;
    hi_x = hi_y = envs::Open2DWorld::kSize;
  } else if (dynamic_cast<const envs::MountainCar*>(&env)) {
    cells = 32;
    lo_x = envs::MountainCar::kMinX;
    hi_x = envs::MountainCar::kMaxX;
    lo_y = -envs::MountainCar::kMaxSpeed;
    hi_y = envs::MountainCar::kMaxSpeed;
  } else {
    throw std::invalid_argument("no evaluation grid for " + env.id());
  }
  const double wx = (hi_x - lo_x) / cells;
  const double wy = (hi_y - lo_y) / cells;
  std::vector<int> slot(static_cast<std::size_t>(cells * cells), -1);
  for (int iy = 0; iy < cells; ++iy) {
    for (int ix = 0; ix < cells; ++ix) {
      const Observation s(lo_x + (ix + 0.5) * wx, lo_y + (iy + 0.5) * wy);
      if (env.goal_at(s)) continue;
      slot[static_cast<std::size_t>(iy * cells + ix)] = static_cast<int>(grid.states.size());
      grid.states.push_back(s);
    }
  }
  grid.bin = [=](const Observation& s) {
    const int ix = std::clamp(static_cast<int>(std::floor((s.x() - lo_x) / wx)), 0, cells - 1);
    const int iy = std::clamp(static_cast<int>(std::floor((s.y() - lo_y) / wy)), 0, cells - 1);
    return slot[static_cast<std::size_t>(iy * cells + ix)];
  };
  return grid;
}

// counts[bin * A + a] of (S_t, A_t) under the fixed behavior with restarts.
std::vector<double> behavior_counts(const envs::Environment& env, std::span<const GvfQuestion> gvfs,
                                    const StateGrid& grid, long steps, RngStream& rng) {
  std::vector<PolicyPtr> policies;
  for (const auto& q : gvfs) policies.push_back(q.policy);
  envs::EnvironmentPtr alias(envs::EnvironmentPtr(), &env);
  behavior::FixedBehavior mu(alias, policies);
  const int actions = env.num_actions();
  std::vector<double> counts(grid.states.size() * static_cast<std::size_t>(actions), 0.0);
  Observation s = env.reset(rng);
  mu.begin_episode(s, rng);
  for (long t = 0; t < steps; ++t) {
    const ActionId a = mu.act(s, rng);
    const int b = grid.bin(s);
    if (b >= 0) counts[static_cast<std::size_t>(b * actions + a.index)] += 1.0;
    const Observation next = env.move(s, a, rng);
    if (env.goal_at(next)) {
      s = env.reset(rng);
      mu.begin_episode(s, rng);
    } else {
      s = next;
    }
  }
  return counts;
}

// Interest-weighted visit counts per bin for rollouts of pi_j from reset.
std::vector<double> interest_counts(const envs::Environment& env, const GvfQuestion& gvf, const StateGrid& grid,
                                    long steps, RngStream& rng) {
  std::vector<double> counts(grid.states.size(), 0.0);
  long t = 0;
  while (t < steps) {
    Observation s = env.reset(rng);
    for (long k = 0; k < 1000 && t < steps; ++k, ++t) {
      const ActionId a = gvf.policy->sample(s, rng);
      const int b = grid.bin(s);
      if (b >= 0) counts[static_cast<std::size_t>(b)] += gvf.interest_at(s, a);
      const Observation next = env.move(s, a, rng);
      const auto goal = env.goal_at(next);
      if (goal && *goal == gvf.goal) break;
      s = next;
    }
  }
  return counts;
}

void normalize(EvaluationSet& set) {
  const double total = set.weight_sum();
  if (total <= 0) throw std::runtime_error("evaluation set has no weight");
  for (EvalPoint& p : set.points) p.weight /= total;
}

std::vector<EvaluationSet> build_tabular(const envs::TabularTMaze& env, std::span<const GvfQuestion> gvfs,
                                         const EvaluationOptions& o) {
  const int actions = env.num_actions();
  const int n = envs::TabularTMaze::kNumCells;
  Eigen::VectorXd d_mu;
  if (o.weighting == Weighting::kBehavior) d_mu = tabular_behavior_visitation(env, gvfs);
  std::vector<EvaluationSet> sets;
  for (const GvfQuestion& gvf : gvfs) {
    const TabularMdpModel m = tabular_gvf_model(env, gvf);
    const Eigen::VectorXd q = true_q(m);
    EvaluationSet set;
    for (int c = 0; c < n; ++c) {
      const Observation s = env.cell_observation(c);
      if (env.goal_at(s)) continue;
      for (int a = 0; a < actions; ++a) {
        const int sa = m.sa(c, a);
        const double pi = m.pi(c, sa);
        double w = 0.0;
        switch (o.weighting) {
          case Weighting::kBehavior: w = d_mu[sa] * pi; break;
          case Weighting::kUniform: w = pi; break;
          case Weighting::kUniformStateAction: w = 1.0; break;
          case Weighting::kInterest: w = pi * gvf.interest_at(s, ActionId(a)); break;
        }
        if (w > 0) set.points.push_back({s, ActionId(a), w, q[sa]});
      }
    }
    normalize(set);
    sets.push_back(std::move(set));
  }
  return sets;
}

std::vector<EvaluationSet> build_sampled(const envs::Environment& env, std::span<const GvfQuestion> gvfs,
                                         const EvaluationOptions& o) {
  const StateGrid grid = make_grid(env);
  const int actions = env.num_actions();
  RngStream rng(o.seed, Stream::kEvaluation);
  std::vector<double> mu_counts;
  if (o.weighting == Weighting::kBehavior) mu_counts = behavior_counts(env, gvfs, grid, o.visitation_steps, rng);
  const int rollouts = env.stochastic_dynamics() ? o.mc_rollouts : 1;

  std::vector<EvaluationSet> sets;
  std::array<double, kMaxActions> probs{};
  for (const GvfQuestion& gvf : gvfs) {
    std::vector<double> visits;
    if (o.weighting == Weighting::kInterest) {
      visits = interest_counts(env, gvf, grid, o.visitation_steps / static_cast<long>(gvfs.size()), rng);
    }
    EvaluationSet set;
    std::vector<StateAction> pairs;
    for (std::size_t i = 0; i < grid.states.size(); ++i) {
      const Observation& s = grid.states[i];
      gvf.policy->probabilities(s, std::span<double>(probs.data(), static_cast<std::size_t>(actions)));
      for (int a = 0; a < actions; ++a) {
        const double pi = probs[static_cast<std::size_t>(a)];
        double w = 0.0;
        switch (o.weighting) {
          case Weighting::kBehavior: w = mu_counts[i * static_cast<std::size_t>(actions) + a] * pi; break;
          case Weighting::kUniform: w = pi; break;
          case Weighting::kUniformStateAction: w = 1.0; break;
          case Weighting::kInterest: w = visits[i] * pi; break;
        }
        if (w > 0) {
          set.points.push_back({s, ActionId(a), w, 0.0});
          pairs.push_back({s, ActionId(a)});
        }
      }
    }
    GvfQuestion unit = gvf;
    unit.cumulant = CumulantSchedule::constant(1.0);
    const MonteCarloTruth truth = monte_carlo_truth(env, unit, pairs, rollouts, rng);
    for (std::size_t i = 0; i < set.points.size(); ++i) set.points[i].unit_value = truth.value[i];
    normalize(set);
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace

std::shared_ptr<const std::vector<EvaluationSet>> build_evaluation(const envs::Environment& env,
                                                                   std::span<const GvfQuestion> gvfs,
                                                                   const EvaluationOptions& options) {
  std::ostringstream key;
  key << env.id() << '|' << to_string(options.weighting) << '|' << options.mc_rollouts << '|'
      << options.visitation_steps << '|' << options.seed << '|' << gvfs.size();
  if (const auto* mc = dynamic_cast<const envs::MountainCar*>(&env)) {
    key << '|' << mc->options().pretrain_steps << '|' << mc->options().pretrain_seed;
  }
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const std::vector<EvaluationSet>>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(key.str());
  if (it != cache.end()) return it->second;

  std::vector<EvaluationSet> sets;
  if (const auto* tabular = dynamic_cast<const envs::TabularTMaze*>(&env)) {
    sets = build_tabular(*tabular, gvfs, options);
  } else {
    sets = build_sampled(env, gvfs, options);
  }
  auto shared = std::make_shared<const std::vector<EvaluationSet>>(std::move(sets));
  cache.emplace(key.str(), shared);
  return shared;
}

}  // namespace contaux::oracle
