#pragma once

#include <vector>

#include "contaux/rng.hpp"

namespace contaux::oracle {

struct Lemma1Report {
  int trials = 0;
  int violations = 0;
  double max_ratio = 0.0;  // max LHS / RHS over trials with RHS > 0
  double tolerance = 1e-12;
  bool passed() const { return violations == 0; }
};

/// Random state-value MDPs (n <= 15, gamma in [0.3, 0.95]), D = d_pi:
/// checks 1/2 ||v - Psi w||_D^2 <= ||r - X w||_D^2 / (2 (1 - gamma)^2).
Lemma1Report check_lemma1(int trials, RngStream& rng, int max_states = 15);

struct Prop1Report {
  std::vector<long> horizons;
  std::vector<double> median_error;   // median over seeds of ||v - Psi wbar_T||_D^2
  std::vector<double> scaled_error;   // median_error * T / log(1 + T)
  double loglog_slope = 0.0;          // slope of log e(T) vs log T
  double scaled_slope = 0.0;          // slope of scaled_error vs log T
  double rho_max = 0.0;
  int seeds = 0;
  bool monotone = false;
  bool passed(double max_slope = -0.8, double max_scaled_slope = 0.05) const {
    return loglog_slope <= max_slope && scaled_slope <= max_scaled_slope;
  }
};

struct Prop1Options {
  std::vector<long> horizons{100, 1000, 10000};
  int seeds = 30;
  int states = 10;
  int features = 4;
  double gamma = 0.9;
  double noise = 0.5;        // reward noise half-width
  double behavior_skew = 1.0;  // 0 gives mu = pi; larger values push d_mu away from d_pi
  std::uint64_t mdp_seed = 7;
};

/// Average-iterate recursive least squares (regularizer 1) on the
/// rho-weighted squared loss, evaluated through the exact SF under d_pi.
Prop1Report check_prop1(const Prop1Options& options, RngStream& rng);

struct AppcReport {
  int case_id = 0;
  int instances = 0;
  double max_gap = 0.0;  // max |Q_sf - Q_lstd| over instances and pairs
  double min_gap = 0.0;  // min over instances of max |Q_sf - Q_lstd|
  bool passed() const { return case_id == 3 ? min_gap > 1e-8 : max_gap < 1e-8; }
};

/// Compares the SF-NR solution (SF projected onto span X, times reward
/// weights) with the LSTD(1) closed form. Case 1: r = X w; case 2: r = Phi w
/// with one-hot reward features Phi; case 3: r = X w + eta with eta
/// D-orthogonal to span X.
AppcReport check_appc(int case_id, int instances, RngStream& rng);

}  // namespace contaux::oracle
