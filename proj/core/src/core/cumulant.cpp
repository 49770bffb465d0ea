#include "contaux/cumulant.hpp"

#include <cmath>
#include <stdexcept>

namespace contaux {

CumulantSchedule CumulantSchedule::constant(double value) {
  return CumulantSchedule(Kind::kConstant, value, 0.0);
}

CumulantSchedule CumulantSchedule::distractor(double mean, double variance) {
  if (variance < 0.0) throw std::invalid_argument("distractor variance must be >= 0");
  return CumulantSchedule(Kind::kDistractor, mean, variance);
}

CumulantSchedule CumulantSchedule::drifter(double variance, double initial) {
  if (variance < 0.0) throw std::invalid_argument("drifter variance must be >= 0");
  return CumulantSchedule(Kind::kDrifter, initial, variance);
}

std::string CumulantSchedule::name() const {
  switch (kind_) {
    case Kind::kConstant: return "constant";
    case Kind::kDistractor: return "distractor";
    case Kind::kDrifter: return "drifter";
  }
  return "unknown";
}

double CumulantSchedule::sample(RngStream& rng) const {
  if (kind_ == Kind::kDistractor) return rng.normal(value_, std::sqrt(variance_));
  return value_;
}

void CumulantSchedule::step(RngStream& rng) {
  if (kind_ == Kind::kDrifter) value_ += rng.normal(0.0, std::sqrt(variance_));
}

void CumulantSchedule::advance(double increment) {
  if (kind_ == Kind::kDrifter) value_ += increment;
}

double CumulantSchedule::expected() const { return value_; }

}  // namespace contaux
