#include "contaux/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "contaux/envs/environment.hpp"
#include "contaux/learners/trace.hpp"
#include "contaux/oracle/evaluation.hpp"

namespace contaux::harness {

using nlohmann::json;

optim::OptimizerPtr OptimizerSpec::make(std::size_t dim) const {
  if (kind == "auto") return std::make_unique<optim::AutoOptimizer>(dim, meta_step, initial_step);
  if (kind == "sgd") return std::make_unique<optim::SgdOptimizer>(initial_step);
  throw ConfigError("unknown optimizer '" + kind + "'");
}

const std::vector<std::string>& learner_ids() {
  static const std::vector<std::string> ids = {"tb", "tb-interest", "etb", "sfnr", "lstd"};
  return ids;
}

const std::vector<std::string>& behavior_ids() {
  static const std::vector<std::string> ids = {"fixed", "random", "gpi", "esarsa"};
  return ids;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

bool contains(const std::vector<std::string>& ids, const std::string& id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

json to_object(const ExperimentConfig& c) {
  json j;
  j["environment"] = c.environment;
  j["behavior"] = c.behavior;
  j["learner"] = c.learner;
  j["sf_trace"] = c.sf_trace;
  j["optimizer"] = c.optimizer.kind;
  j["meta_step"] = c.optimizer.meta_step;
  j["initial_step"] = c.optimizer.initial_step;
  j["cumulant_initial_step"] = c.cumulant_initial_step ? json(*c.cumulant_initial_step) : json(nullptr);
  j["behavior_optimizer"] = c.behavior_optimizer.kind;
  j["behavior_meta_step"] = c.behavior_optimizer.meta_step;
  j["behavior_initial_step"] = c.behavior_optimizer.initial_step;
  j["lambda"] = c.lambda;
  j["behavior_lambda"] = c.behavior_lambda;
  j["epsilon"] = c.epsilon;
  j["replay"] = c.replay;
  j["replay_capacity"] = c.replay_capacity;
  j["replay_batch"] = c.replay_batch;
  j["interest"] = c.interest;
  j["etb_emphasis_clip"] = c.etb_emphasis_clip;
  j["optimistic_threshold"] = c.optimistic_threshold;
  j["step_penalty"] = c.step_penalty ? json(*c.step_penalty) : json(nullptr);
  j["lstd_ridge"] = c.lstd_ridge;
  j["steps"] = c.steps;
  j["eval_every"] = c.eval_every;
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  j["weighting"] = c.weighting;
  j["pretrain_steps"] = c.pretrain_steps;
  j["mc_rollouts"] = c.mc_rollouts;
  j["visitation_steps"] = c.visitation_steps;
  j["output_dir"] = c.output_dir;
  return j;
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void read_optional(const json& j, const char* key, std::optional<double>& out) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    out.reset();
    return;
  }
  double v = 0.0;
  read(j, key, v);
  out = v;
}

ExperimentConfig from_object(const json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const json known = to_object(c);
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  read(j, "environment", c.environment);
  read(j, "behavior", c.behavior);
  read(j, "learner", c.learner);
  read(j, "sf_trace", c.sf_trace);
  read(j, "optimizer", c.optimizer.kind);
  read(j, "meta_step", c.optimizer.meta_step);
  read(j, "initial_step", c.optimizer.initial_step);
  read_optional(j, "cumulant_initial_step", c.cumulant_initial_step);
  read(j, "behavior_optimizer", c.behavior_optimizer.kind);
  read(j, "behavior_meta_step", c.behavior_optimizer.meta_step);
  read(j, "behavior_initial_step", c.behavior_optimizer.initial_step);
  read(j, "lambda", c.lambda);
  read(j, "behavior_lambda", c.behavior_lambda);
  read(j, "epsilon", c.epsilon);
  read(j, "replay", c.replay);
  read(j, "replay_capacity", c.replay_capacity);
  read(j, "replay_batch", c.replay_batch);
  read(j, "interest", c.interest);
  read(j, "etb_emphasis_clip", c.etb_emphasis_clip);
  read(j, "optimistic_threshold", c.optimistic_threshold);
  read_optional(j, "step_penalty", c.step_penalty);
  read(j, "lstd_ridge", c.lstd_ridge);
  read(j, "steps", c.steps);
  read(j, "eval_every", c.eval_every);
  read(j, "runs", c.runs);
  read(j, "seed", c.seed);
  read(j, "weighting", c.weighting);
  read(j, "pretrain_steps", c.pretrain_steps);
  read(j, "mc_rollouts", c.mc_rollouts);
  read(j, "visitation_steps", c.visitation_steps);
  read(j, "output_dir", c.output_dir);
  return c;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig c = *this;
  if (!contains(envs::environment_ids(), c.environment)) {
    throw ConfigError("unknown environment '" + c.environment + "'");
  }
  if (!contains(behavior_ids(), c.behavior)) throw ConfigError("unknown behavior '" + c.behavior + "'");
  if (!contains(learner_ids(), c.learner)) throw ConfigError("unknown learner '" + c.learner + "'");
  try {
    learners::parse_trace_rule(c.sf_trace);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto* spec : {&c.optimizer, &c.behavior_optimizer}) {
    if (spec->kind != "auto" && spec->kind != "sgd") throw ConfigError("unknown optimizer '" + spec->kind + "'");
    if (!(spec->initial_step > 0)) throw ConfigError("initial step sizes must be > 0");
  }
  const bool tabular = c.environment == "tabular-tmaze";
  if (c.steps == 0) {
    c.steps = tabular ? 50000 : c.environment == "continuous-tmaze" ? 100000 : 200000;
  }
  if (c.eval_every == 0) c.eval_every = tabular ? 100 : 500;
  if (c.weighting.empty()) {
    if (c.environment == "open-2d-world") {
      c.weighting = "interest";
    } else if (c.environment == "mountain-car") {
      c.weighting = "uniform-sa";
    } else {
      c.weighting = c.behavior == "fixed" ? "behavior" : "uniform";
    }
  }
  try {
    oracle::parse_weighting(c.weighting);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.steps <= 0) throw ConfigError("steps must be > 0");
  if (c.eval_every <= 0) throw ConfigError("eval_every must be > 0");
  if (c.runs < 1) throw ConfigError("runs must be >= 1");
  if (c.lambda < 0 || c.lambda > 1 || c.behavior_lambda < 0 || c.behavior_lambda > 1) {
    throw ConfigError("lambda must lie in [0, 1]");
  }
  if (c.epsilon < 0 || c.epsilon > 1) throw ConfigError("epsilon must lie in [0, 1]");
  if (c.replay) {
    if (c.lambda != 0.0) throw ConfigError("replay requires lambda = 0");
    if (c.replay_capacity < 1 || c.replay_batch < 0) throw ConfigError("invalid replay capacity or batch");
    if (c.learner == "lstd") throw ConfigError("replay is not defined for lstd");
  }
  if (c.behavior == "fixed" && c.environment != "tabular-tmaze" && c.environment != "continuous-tmaze") {
    throw ConfigError("fixed behavior needs a maze environment");
  }
  if (c.weighting == "behavior" && c.behavior != "fixed") throw ConfigError("behavior weighting needs the fixed behavior");
  if (c.mc_rollouts < 1) throw ConfigError("mc_rollouts must be >= 1");
  return c;
}

std::string ExperimentConfig::to_json() const { return to_object(*this).dump(2); }

std::uint64_t ExperimentConfig::hash() const {
  json j = to_object(resolved());
  j.erase("output_dir");
  j.erase("runs");
  return fnv1a(j.dump());
}

ExperimentConfig parse_config(const std::string& json_text) { return from_object(parse_json(json_text), {}); }

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ExperimentConfig with_overrides(const ExperimentConfig& base, const std::string& overrides_json) {
  return from_object(parse_json(overrides_json), base);
}

}  // namespace contaux::harness
