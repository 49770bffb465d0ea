#include <benchmark/benchmark.h>

#include <vector>

#include "contaux/behavior/behavior.hpp"
#include "contaux/envs/environment.hpp"
#include "contaux/features/reward_features.hpp"
#include "contaux/learners/learner.hpp"
#include "contaux/optim/optimizer.hpp"

namespace {

using namespace contaux;

void BM_AutoUpdate(benchmark::State& state) {
  const auto nnz = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 4096;
  optim::AutoOptimizer opt(dim, 0.04, 0.1);
  std::vector<double> theta(dim, 0.0);
  RngStream rng(1, Stream::kEvaluation);
  SparseVector phi(dim);
  for (std::size_t k = 0; k < nnz; ++k) phi.push(static_cast<std::uint32_t>(k * (dim / nnz)), 1.0);
  const std::vector<double> z(nnz, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(opt.update(theta, rng.normal(0.0, 1.0), phi, z));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AutoUpdate)->Arg(1)->Arg(8)->Arg(64);

struct Recorded {
  envs::EnvironmentPtr env;
  std::vector<GvfQuestion> gvfs;
  std::vector<Transition> steps;
};

Recorded make_stream(const std::string& id, std::size_t n) {
  Recorded out;
  out.env = envs::make_environment(id);
  RngStream constants(2, Stream::kConstants);
  out.gvfs = out.env->gvf_suite(constants);
  RngStream rng(2, Stream::kEnvironment);
  std::vector<RngStream> cum;
  for (std::size_t j = 0; j < out.gvfs.size(); ++j) {
    cum.emplace_back(2, static_cast<std::uint64_t>(Stream::kCumulantBase) + j);
  }
  Observation s = out.env->reset(rng);
  for (std::size_t t = 0; t < n; ++t) {
    const ActionId a(static_cast<int>(rng.index(static_cast<std::size_t>(out.env->num_actions()))));
    const auto o = out.env->step(s, a, out.gvfs, rng, cum);
    out.steps.push_back(Transition{s, a, o.s_next, o.cumulants[0], o.discounts[0]});
    s = o.terminal() ? out.env->reset(rng) : o.s_next;
  }
  return out;
}

void BM_TbUpdate(benchmark::State& state) {
  const auto data = make_stream("open-2d-world", 4096);
  learners::TbLearner l(data.env->features().state, data.gvfs[0].policy, learners::TraceRule::kTb, 0.9,
                        optim::AutoOptimizer(data.env->features().state->dim(), 0.04, 0.1));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(l.update(data.steps[i], learners::StepContext{0.25, 1.0}));
    i = (i + 1) % data.steps.size();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TbUpdate);

void BM_SfNrUpdate(benchmark::State& state) {
  const auto data = make_stream("open-2d-world", 4096);
  const auto env = data.env;
  auto reward = std::make_shared<features::GoalIndicatorRewardFeatures>(
      env->num_goals(), [env](const Observation& s) { return env->goal_at(s); });
  const auto enc = env->features().state;
  const optim::AutoOptimizer opt(enc->dim(), 0.04, 0.1);
  learners::SfNrLearner l(enc, reward, data.gvfs[0].policy, learners::TraceRule::kTb, 0.9, opt,
                          optim::AutoOptimizer(reward->dim(), 0.04, 0.1));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(l.update(data.steps[i], learners::StepContext{0.25, 1.0}));
    i = (i + 1) % data.steps.size();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SfNrUpdate);

void BM_GpiActAndUpdate(benchmark::State& state) {
  const auto data = make_stream("continuous-tmaze", 4096);
  std::vector<PolicyPtr> policies;
  for (const auto& q : data.gvfs) policies.push_back(q.policy);
  const auto fs = data.env->features();
  behavior::GpiBehavior b(fs.state, fs.behavior_reward, policies, 0.1, 0.9,
                          optim::AutoOptimizer(fs.state->dim(), 0.04, 0.1),
                          optim::AutoOptimizer(fs.behavior_reward->dim(), 0.04, 0.1));
  b.optimistic_init(10.0);
  RngStream rng(3, Stream::kExploration);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& t = data.steps[i];
    benchmark::DoNotOptimize(b.act(t.s, rng));
    b.update(Transition{t.s, t.a, t.s_next, 0.1, t.discount_next == 0.0 ? 0.0 : 1.0});
    i = (i + 1) % data.steps.size();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GpiActAndUpdate);

void BM_EnvStep(benchmark::State& state, const std::string& id) {
  const auto env = envs::make_environment(id);
  RngStream constants(4, Stream::kConstants);
  const auto gvfs = env->gvf_suite(constants);
  RngStream rng(4, Stream::kEnvironment);
  std::vector<RngStream> cum;
  for (std::size_t j = 0; j < gvfs.size(); ++j) {
    cum.emplace_back(4, static_cast<std::uint64_t>(Stream::kCumulantBase) + j);
  }
  Observation s = env->reset(rng);
  for (auto _ : state) {
    const ActionId a(static_cast<int>(rng.index(static_cast<std::size_t>(env->num_actions()))));
    const auto o = env->step(s, a, gvfs, rng, cum);
    s = o.terminal() ? env->reset(rng) : o.s_next;
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_EnvStep, tabular, std::string("tabular-tmaze"));
BENCHMARK_CAPTURE(BM_EnvStep, continuous, std::string("continuous-tmaze"));
BENCHMARK_CAPTURE(BM_EnvStep, open_world, std::string("open-2d-world"));

}  // namespace

BENCHMARK_MAIN();
