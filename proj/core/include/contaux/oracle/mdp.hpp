#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "contaux/rng.hpp"

namespace contaux::oracle {

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact matrices of a finite MDP under a target policy, action-value form.
/// State-action pairs are indexed sa = s * A + a.
struct TabularMdpModel {
  int num_states = 0;
  int num_actions = 0;
  Eigen::MatrixXd p;        // n_sa x n_s transition probabilities
  Eigen::MatrixXd p_gamma;  // n_sa x n_s, P(s,a,s') gamma(s,a,s')
  Eigen::MatrixXd pi;       // n_s x n_sa policy matrix
  Eigen::VectorXd r;        // n_sa expected cumulant
  Eigen::MatrixXd x;        // n_sa x d features
  Eigen::VectorXd d;        // n_sa weighting (diagonal of D)

  int num_pairs() const { return num_states * num_actions; }
  int sa(int s, int a) const { return s * num_actions + a; }
  /// Throws std::invalid_argument when shapes or stochasticity are off.
  void validate() const;
};

/// Solves A X = B by full-pivot LU; throws SingularSystemError when the
/// smallest pivot magnitude is below `pivot_threshold`.
Eigen::MatrixXd checked_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double pivot_threshold = 1e-12);

/// Q = (I - P_gamma Pi)^{-1} r.
Eigen::VectorXd true_q(const TabularMdpModel& m);
/// Psi = (I - P_gamma Pi)^{-1} X, or with reward features `phi` instead of X.
Eigen::MatrixXd true_sf(const TabularMdpModel& m);
Eigen::MatrixXd true_sf(const TabularMdpModel& m, const Eigen::MatrixXd& phi);

/// A^{-1} b with A = X^T D (I - lambda P_gamma Pi)^{-1} (I - P_gamma Pi) X and
/// b = X^T D (I - lambda P_gamma Pi)^{-1} r.
Eigen::VectorXd lstd_solution(const TabularMdpModel& m, double lambda);

/// E[delta x]^T C^{-1} E[delta x] under the model's weighting d, with
/// C = X^T D X (ridge-regularized when singular).
double mspbe(const TabularMdpModel& m, const Eigen::VectorXd& w);

/// Stationary distribution of a row-stochastic matrix by power iteration on
/// the lazy chain (P + I) / 2, started from `init` (uniform when empty).
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p, Eigen::VectorXd init = {},
                                        double tol = 1e-14, int max_iters = 1000000);

/// d(s, a) = d_pi(s) pi(a|s) for the chain P Pi.
Eigen::VectorXd stationary_pair_distribution(const TabularMdpModel& m);

/// Random row-stochastic matrix with `rows` x `cols` entries.
Eigen::MatrixXd random_stochastic(int rows, int cols, RngStream& rng);

struct RandomMdpOptions {
  int states = 5;
  int actions = 2;
  int features = 3;
  double gamma = 0.9;
};

/// Dense random MDP with constant discount, random pi, Gaussian features,
/// realizable r = X w (w Gaussian), and d = stationary pair distribution.
TabularMdpModel random_mdp(const RandomMdpOptions& options, RngStream& rng);

}  // namespace contaux::oracle
