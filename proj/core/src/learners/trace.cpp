#include "contaux/learners/trace.hpp"

#include <cmath>
#include <stdexcept>

namespace contaux::learners {

EligibilityTrace::EligibilityTrace(std::size_t dim) { resize(dim); }

void EligibilityTrace::resize(std::size_t dim) {
  values_.assign(dim, 0.0);
  is_active_.assign(dim, 0);
  active_.clear();
}

void EligibilityTrace::clear() {
  for (std::uint32_t i : active_) {
    values_[i] = 0.0;
    is_active_[i] = 0;
  }
  active_.clear();
}

void EligibilityTrace::decay(double factor) {
  if (factor == 0.0) {
    clear();
    return;
  }
  std::size_t keep = 0;
  for (std::uint32_t i : active_) {
    values_[i] *= factor;
    if (std::abs(values_[i]) < kPrune) {
      values_[i] = 0.0;
      is_active_[i] = 0;
    } else {
      active_[keep++] = i;
    }
  }
  active_.resize(keep);
}

void EligibilityTrace::add(const SparseVector& x, double coeff) {
  if (coeff == 0.0) return;
  for (std::size_t k = 0; k < x.nnz(); ++k) {
    const std::uint32_t i = x.indices[k];
    values_[i] += coeff * x.values[k];
    if (!is_active_[i]) {
      is_active_[i] = 1;
      active_.push_back(i);
    }
  }
}

void EligibilityTrace::assign(const SparseVector& x, double coeff) {
  clear();
  add(x, coeff);
}

const SparseVector& EligibilityTrace::view() {
  view_.dim = values_.size();
  view_.indices = active_;
  view_.values.resize(active_.size());
  for (std::size_t k = 0; k < active_.size(); ++k) view_.values[k] = values_[active_[k]];
  return view_;
}

TraceRule parse_trace_rule(const std::string& name) {
  if (name == "tb") return TraceRule::kTb;
  if (name == "tb-interest") return TraceRule::kTbInterest;
  if (name == "etb") return TraceRule::kEtb;
  throw std::invalid_argument("unknown trace rule '" + name + "'");
}

std::string to_string(TraceRule rule) {
  switch (rule) {
    case TraceRule::kTb: return "tb";
    case TraceRule::kTbInterest: return "tb-interest";
    case TraceRule::kEtb: return "etb";
  }
  return "unknown";
}

TbTrace::TbTrace(std::size_t dim, TraceRule rule, double lambda, double emphasis_clip)
    : trace_(dim), rule_(rule), lambda_(lambda), clip_(emphasis_clip) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in [0, 1]");
}

void TbTrace::step(const SparseVector& x, double pi_a, const StepContext& ctx) {
  if (ctx.interest < 0.0) throw std::invalid_argument("interest must be >= 0");
  double coeff = 1.0;
  switch (rule_) {
    case TraceRule::kTb:
      break;
    case TraceRule::kTbInterest:
      coeff = ctx.interest;
      break;
    case TraceRule::kEtb: {
      if (!(ctx.behavior_prob > 0.0)) throw std::invalid_argument("etb: behavior probability of the taken action is 0");
      const double rho = pi_a / ctx.behavior_prob;
      followon_ = rho_prev_ * gamma_prev_ * followon_ + ctx.interest;
      const double lb = lambda_ * ctx.behavior_prob;
      double bracket = lb * ctx.interest + (1.0 - lb) * followon_;
      if (clip_ > 0.0 && bracket > clip_) bracket = clip_;
      emphasis_ = rho * bracket;
      rho_prev_ = rho;
      coeff = emphasis_;
      break;
    }
  }
  trace_.decay(gamma_prev_ * pi_a * lambda_);
  trace_.add(x, coeff);
}

double TbTrace::one_step_coefficient(double pi_a, const StepContext& ctx) const {
  switch (rule_) {
    case TraceRule::kTb: return 1.0;
    case TraceRule::kTbInterest: return ctx.interest;
    case TraceRule::kEtb: return ctx.behavior_prob > 0.0 ? pi_a / ctx.behavior_prob * ctx.interest : 0.0;
  }
  return 1.0;
}

void TbTrace::reset() {
  trace_.clear();
  gamma_prev_ = 0.0;
  rho_prev_ = 0.0;
  followon_ = 0.0;
  emphasis_ = 0.0;
}

}  // namespace contaux::learners
