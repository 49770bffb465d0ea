#pragma once

#include <functional>
#include <string>

#include "contaux/cumulant.hpp"
#include "contaux/policy.hpp"
#include "contaux/types.hpp"

namespace contaux {

using InterestFn = std::function<double(const Observation&, ActionId)>;

/// A prediction target (pi, gamma, c) plus an interest function i(s, a).
///
/// The cumulant is nonzero only on transitions entering `goal`, where the
/// discount is 0; every other transition is discounted by `gamma`.
struct GvfQuestion {
  std::string name;
  PolicyPtr policy;
  int goal = 0;
  double gamma = 0.9;
  CumulantSchedule cumulant = CumulantSchedule::constant(0.0);
  InterestFn interest;  // empty means constant 1

  double discount(bool entered_own_goal) const { return entered_own_goal ? 0.0 : gamma; }
  double interest_at(const Observation& s, ActionId a) const { return interest ? interest(s, a) : 1.0; }
};

}  // namespace contaux
