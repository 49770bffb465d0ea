#include "contaux/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "contaux/behavior/behavior.hpp"
#include "contaux/envs/environment.hpp"
#include "contaux/learners/learner.hpp"
#include "contaux/learners/replay.hpp"
#include "contaux/oracle/evaluation.hpp"
#include "contaux/oracle/metrics.hpp"

namespace contaux::harness {

namespace {

std::size_t tail_count(std::size_t rows, double fraction) {
  if (rows == 0) return 0;
  const long n = std::lround(fraction * static_cast<double>(rows));
  return static_cast<std::size_t>(std::clamp<long>(n, 1, static_cast<long>(rows)));
}

double row_sum(const LogRow& row) {
  double s = 0.0;
  for (double v : row.rmsve) s += v;
  return s;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

learners::LearnerPtr make_learner(const ExperimentConfig& c, const envs::Environment& env,
                                  const envs::FeatureSet& features, const GvfQuestion& gvf) {
  const std::size_t dim = features.state->dim();
  if (c.learner == "lstd") return std::make_unique<learners::LstdLearner>(features.state, gvf.policy, c.lambda, c.lstd_ridge);
  if (c.learner == "sfnr") {
    auto reward_map = std::make_shared<features::GoalIndicatorRewardFeatures>(
        env.num_goals(), [&env](const Observation& s) { return env.goal_at(s); });
    OptimizerSpec cumulant = c.optimizer;
    if (c.cumulant_initial_step) cumulant.initial_step = *c.cumulant_initial_step;
    return std::make_unique<learners::SfNrLearner>(features.state, reward_map, gvf.policy,
                                                   learners::parse_trace_rule(c.sf_trace), c.lambda,
                                                   *c.optimizer.make(dim), *cumulant.make(reward_map->dim()),
                                                   c.etb_emphasis_clip);
  }
  return std::make_unique<learners::TbLearner>(features.state, gvf.policy, learners::parse_trace_rule(c.learner),
                                               c.lambda, *c.optimizer.make(dim), c.etb_emphasis_clip);
}

behavior::BehaviorPtr make_behavior(const ExperimentConfig& c, const envs::EnvironmentPtr& env,
                                    const envs::FeatureSet& features, const std::vector<GvfQuestion>& gvfs) {
  std::vector<PolicyPtr> policies;
  for (const auto& q : gvfs) policies.push_back(q.policy);
  if (c.behavior == "fixed") return std::make_unique<behavior::FixedBehavior>(env, policies);
  if (c.behavior == "random") return std::make_unique<behavior::RandomBehavior>(env->num_actions());
  if (c.behavior == "esarsa") {
    auto b = std::make_unique<behavior::EsarsaControl>(features.state, c.epsilon, c.behavior_lambda,
                                                       *c.behavior_optimizer.make(features.state->dim()));
    b->optimistic_init(c.optimistic_threshold);
    return b;
  }
  auto b = std::make_unique<behavior::GpiBehavior>(features.state, features.behavior_reward, policies, c.epsilon,
                                                   c.behavior_lambda,
                                                   *c.behavior_optimizer.make(features.state->dim()),
                                                   *c.behavior_optimizer.make(features.behavior_reward->dim()));
  b->optimistic_init(c.optimistic_threshold);
  return b;
}

void write_sidecar(const std::string& path, const ExperimentConfig& c, const RunLog& log) {
  nlohmann::json j;
  j["seed"] = log.seed;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(log.config_hash));
  j["config_hash"] = hash;
  j["gvfs"] = log.gvf_names;
  j["config"] = nlohmann::json::parse(c.to_json());
  j["config"].erase("output_dir");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace

double RunLog::last_fraction_te(double fraction) const {
  std::vector<std::vector<double>> history;
  history.reserve(rows.size());
  for (const auto& r : rows) history.push_back(r.rmsve);
  return oracle::last_fraction_total_error(history, fraction);
}

double RunLog::final_rmsve(double fraction) const {
  const std::size_t n = tail_count(rows.size(), fraction);
  if (n == 0) return 0.0;
  double s = 0.0;
  for (std::size_t i = rows.size() - n; i < rows.size(); ++i) s += row_sum(rows[i]);
  return s / static_cast<double>(n);
}

double RunLog::early_rmsve(double fraction) const {
  const std::size_t n = tail_count(rows.size(), fraction);
  if (n == 0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += row_sum(rows[i]);
  return s / static_cast<double>(n);
}

std::vector<long> RunLog::visits_since(double from_fraction) const {
  if (rows.empty()) return {};
  std::vector<long> out = rows.back().visits;
  const auto start = static_cast<long>(std::floor(from_fraction * static_cast<double>(rows.size()))) - 1;
  if (start >= 0) {
    const auto& base = rows[static_cast<std::size_t>(start)].visits;
    for (std::size_t g = 0; g < out.size(); ++g) out[g] -= base[g];
  }
  return out;
}

std::string csv_header(std::size_t num_gvfs, std::size_t num_goals) {
  std::string h = "step";
  for (std::size_t j = 1; j <= num_gvfs; ++j) h += ",rmsve_gvf_" + std::to_string(j);
  h += ",te,mean_intrinsic_reward";
  for (std::size_t g = 1; g <= num_goals; ++g) h += ",visits_goal_" + std::to_string(g);
  return h;
}

std::string csv_row(const LogRow& row) {
  std::string line = std::to_string(row.step);
  for (double v : row.rmsve) line += "," + format_number(v);
  line += "," + format_number(row.te) + "," + format_number(row.mean_intrinsic_reward);
  for (long v : row.visits) line += "," + std::to_string(v);
  return line;
}

std::uint64_t run_seed(std::uint64_t master, int index) {
  return derive_seed(master, static_cast<std::uint64_t>(index) + 1);
}

RunLog run_experiment(const ExperimentConfig& raw, std::uint64_t seed, const std::string& csv_path,
                      const RunHooks& hooks) {
  const ExperimentConfig c = raw.resolved();
  envs::EnvironmentOptions env_options;
  env_options.pretrain_steps = c.pretrain_steps;
  const envs::EnvironmentPtr env = envs::make_environment(c.environment, env_options);

  RngStream env_rng(seed, Stream::kEnvironment);
  RngStream explore_rng(seed, Stream::kExploration);
  RngStream replay_rng(seed, Stream::kReplay);
  RngStream constants_rng(seed, Stream::kConstants);
  std::vector<GvfQuestion> gvfs = env->gvf_suite(constants_rng);
  const std::size_t n = gvfs.size();
  std::vector<RngStream> cumulant_rngs;
  for (std::size_t j = 0; j < n; ++j) {
    cumulant_rngs.emplace_back(seed, static_cast<std::uint64_t>(Stream::kCumulantBase) + j);
  }

  const envs::FeatureSet features = env->features();
  std::vector<learners::LearnerPtr> learners;
  for (const auto& q : gvfs) learners.push_back(make_learner(c, *env, features, q));
  behavior::BehaviorPtr mu = make_behavior(c, env, features, gvfs);

  oracle::EvaluationOptions eval_options;
  eval_options.weighting = oracle::parse_weighting(c.weighting);
  eval_options.mc_rollouts = c.mc_rollouts;
  eval_options.visitation_steps = c.visitation_steps;
  const auto evaluation = oracle::build_evaluation(*env, gvfs, eval_options);

  std::unique_ptr<learners::ReplayBuffer> buffer;
  if (c.replay) {
    buffer = std::make_unique<learners::ReplayBuffer>(static_cast<std::size_t>(c.replay_capacity),
                                                      static_cast<std::size_t>(c.replay_batch));
  }

  RunLog log;
  log.seed = seed;
  log.config_hash = c.hash();
  for (const auto& q : gvfs) log.gvf_names.push_back(q.name);

  std::ofstream csv;
  if (!csv_path.empty()) {
    const auto parent = std::filesystem::path(csv_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    csv.open(csv_path, std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write '" + csv_path + "'");
    csv << csv_header(n, static_cast<std::size_t>(env->num_goals())) << '\n' << std::flush;
    auto sidecar = std::filesystem::path(csv_path).replace_extension(".json");
    write_sidecar(sidecar.string(), c, log);
  }

  const double penalty = c.step_penalty.value_or(env->step_penalty());
  auto phase = [&hooks](long t, Phase p) {
    if (hooks.on_phase) hooks.on_phase(t, p);
  };

  std::vector<double> deltas(n, 0.0);
  std::vector<long> visits(static_cast<std::size_t>(env->num_goals()), 0);
  double te = 0.0;
  double reward_sum = 0.0;
  long reward_count = 0;

  Observation s = env->reset(env_rng);
  mu->begin_episode(s, explore_rng);
  for (long t = 0; t < c.steps; ++t) {
    double b_prob = 1.0;
    const ActionId a = mu->act(s, explore_rng, &b_prob);
    phase(t, Phase::kAct);

    const envs::StepOutcome out = env->step(s, a, gvfs, env_rng, cumulant_rngs);
    if (out.goal_hit) ++visits[static_cast<std::size_t>(*out.goal_hit)];
    phase(t, Phase::kObserve);

    learners::ReplayRecord record;
    std::vector<std::size_t> batch;
    if (buffer) {
      record = {s, a, out.s_next, out.cumulants, out.discounts, {}, b_prob};
      for (const auto& q : gvfs) record.interests.push_back(c.interest ? q.interest_at(s, a) : 1.0);
      buffer->push(record);
      batch = buffer->sample_indices(replay_rng);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const learners::StepContext ctx{b_prob, c.interest ? gvfs[j].interest_at(s, a) : 1.0};
      const Transition tr{s, a, out.s_next, out.cumulants[j], out.discounts[j]};
      deltas[j] = learners[j]->update(tr, ctx);
      for (std::size_t i : batch) {
        const learners::ReplayRecord& r = buffer->at(i);
        deltas[j] += learners[j]->replay(r.transition(j), {r.behavior_prob, r.interests[j]});
      }
    }
    phase(t, Phase::kUpdateGvfs);

    const double reward = behavior::intrinsic_reward(deltas, penalty);
    reward_sum += reward;
    ++reward_count;
    phase(t, Phase::kIntrinsicReward);

    mu->update(Transition{s, a, out.s_next, reward, out.behavior_discount});
    phase(t, Phase::kUpdateBehavior);

    for (std::size_t j = 0; j < n; ++j) gvfs[j].cumulant.step(cumulant_rngs[j]);

    if (out.terminal()) {
      for (auto& l : learners) l->end_episode();
      mu->end_episode();
      s = env->reset(env_rng);
      mu->begin_episode(s, explore_rng);
    } else {
      s = out.s_next;
    }

    if ((t + 1) % c.eval_every == 0 || t + 1 == c.steps) {
      LogRow row;
      row.step = t + 1;
      for (std::size_t j = 0; j < n; ++j) {
        learners[j]->prepare_evaluation();
        const double e = (*evaluation)[j].rmsve(*learners[j], gvfs[j].cumulant.expected());
        row.rmsve.push_back(e);
        te += e;
      }
      row.te = te;
      row.mean_intrinsic_reward = reward_count ? reward_sum / static_cast<double>(reward_count) : 0.0;
      row.visits = visits;
      reward_sum = 0.0;
      reward_count = 0;
      if (csv.is_open()) csv << csv_row(row) << '\n' << std::flush;
      log.rows.push_back(std::move(row));
    }
  }
  return log;
}

}  // namespace contaux::harness
