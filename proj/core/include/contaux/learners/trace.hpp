#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contaux/sparse.hpp"

namespace contaux::learners {

/// Dense-backed sparse accumulator for eligibility traces. Entries that decay
/// below `kPrune` in magnitude are dropped from the active set.
class EligibilityTrace {
 public:
  static constexpr double kPrune = 1e-10;

  explicit EligibilityTrace(std::size_t dim = 0);

  void resize(std::size_t dim);
  void clear();
  void decay(double factor);
  void add(const SparseVector& x, double coeff);
  /// Replaces the trace with coeff * x.
  void assign(const SparseVector& x, double coeff);

  std::size_t dim() const { return values_.size(); }
  std::size_t nnz() const { return active_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  /// Sparse view, valid until the next mutation.
  const SparseVector& view();

 private:
  std::vector<double> values_;
  std::vector<std::uint32_t> active_;
  std::vector<char> is_active_;
  SparseVector view_;
};

enum class TraceRule { kTb, kTbInterest, kEtb };

TraceRule parse_trace_rule(const std::string& name);
std::string to_string(TraceRule rule);

/// Per-step inputs to a trace rule beyond the transition itself.
struct StepContext {
  double behavior_prob = 1.0;  // b(A_t | S_t)
  double interest = 1.0;       // I_t
};

/// Tree-Backup trace with the three weightings used here:
///   tb          z = gamma_t pi_t lambda z + x
///   tb-interest z = gamma_t pi_t lambda z + I_t x
///   etb         F = rho_{t-1} gamma_t F + I_t,
///               M = rho_t [lambda b I_t + (1 - lambda b) F],
///               z = gamma_t pi_t lambda z + M x
/// gamma_t is the discount recorded by the previous call to finish().
class TbTrace {
 public:
  TbTrace(std::size_t dim, TraceRule rule, double lambda, double emphasis_clip = 0.0);

  /// Decays and accumulates for the transition leaving S_t with action A_t.
  void step(const SparseVector& x, double pi_a, const StepContext& ctx);
  /// Records gamma_{t+1} for the next step.
  void finish(double discount_next) { gamma_prev_ = discount_next; }
  void reset();

  EligibilityTrace& trace() { return trace_; }
  TraceRule rule() const { return rule_; }
  double lambda() const { return lambda_; }
  double followon() const { return followon_; }
  double emphasis() const { return emphasis_; }
  /// Coefficient on x for a one-step (lambda = 0, no history) update.
  double one_step_coefficient(double pi_a, const StepContext& ctx) const;

 private:
  EligibilityTrace trace_;
  TraceRule rule_;
  double lambda_;
  double clip_;
  double gamma_prev_ = 0.0;
  double rho_prev_ = 0.0;
  double followon_ = 0.0;
  double emphasis_ = 0.0;
};

}  // namespace contaux::learners
