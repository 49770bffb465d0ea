#include "contaux/envs/environment.hpp"

#include <stdexcept>

#include "contaux/envs/continuous_tmaze.hpp"
#include "contaux/envs/mountain_car.hpp"
#include "contaux/envs/open_world.hpp"
#include "contaux/envs/tabular_tmaze.hpp"

namespace contaux::envs {

double Environment::goal_distance(const Observation&, int) const {
  throw std::logic_error(id() + " has no goal distance");
}

void Environment::check_action(ActionId a) const {
  if (a.index < 0 || a.index >= num_actions()) {
    throw std::out_of_range("invalid action index " + std::to_string(a.index) + " for " + id());
  }
}

StepOutcome Environment::step(const Observation& s, ActionId a, std::span<const GvfQuestion> gvfs,
                              RngStream& env_rng, std::span<RngStream> cumulant_rngs) const {
  check_action(a);
  if (cumulant_rngs.size() < gvfs.size()) throw std::invalid_argument("one cumulant stream per GVF required");
  StepOutcome out;
  out.s_next = move(s, a, env_rng);
  out.goal_hit = goal_at(out.s_next);
  out.behavior_discount = out.goal_hit ? 0.0 : 1.0;
  out.cumulants.resize(gvfs.size());
  out.discounts.resize(gvfs.size());
  for (std::size_t i = 0; i < gvfs.size(); ++i) {
    const bool own = out.goal_hit && *out.goal_hit == gvfs[i].goal;
    out.cumulants[i] = own ? gvfs[i].cumulant.sample(cumulant_rngs[i]) : 0.0;
    out.discounts[i] = gvfs[i].discount(own);
  }
  return out;
}

const std::vector<std::string>& environment_ids() {
  static const std::vector<std::string> ids = {"tabular-tmaze", "continuous-tmaze", "open-2d-world",
                                               "mountain-car"};
  return ids;
}

EnvironmentPtr make_environment(const std::string& id, const EnvironmentOptions& options) {
  if (id == "tabular-tmaze") return std::make_shared<TabularTMaze>();
  if (id == "continuous-tmaze") return std::make_shared<ContinuousTMaze>();
  if (id == "open-2d-world") return std::make_shared<Open2DWorld>();
  if (id == "mountain-car") return std::make_shared<MountainCar>(options);
  throw std::invalid_argument("unknown environment '" + id + "'");
}

}  // namespace contaux::envs
