#include "contaux/oracle/checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "contaux/oracle/mdp.hpp"
#include "contaux/oracle/metrics.hpp"

namespace contaux::oracle {

namespace {

Eigen::MatrixXd gaussian(int rows, int cols, RngStream& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal(0.0, 1.0);
  }
  return m;
}

double weighted_sq_norm(const Eigen::VectorXd& v, const Eigen::VectorXd& d) {
  return (v.array().square() * d.array()).sum();
}

// D-weighted least-squares projection coefficients of `target` onto span(basis).
Eigen::MatrixXd projection_weights(const Eigen::MatrixXd& basis, const Eigen::VectorXd& d,
                                   const Eigen::MatrixXd& target) {
  const Eigen::MatrixXd btd = basis.transpose() * d.asDiagonal();
  return checked_solve(btd * basis, btd * target);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

Lemma1Report check_lemma1(int trials, RngStream& rng, int max_states) {
  Lemma1Report report;
  report.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(max_states)));
    const int k = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
    const double gamma = rng.uniform(0.3, 0.95);
    const Eigen::MatrixXd p = random_stochastic(n, n, rng);
    const Eigen::VectorXd d = stationary_distribution(p);
    const Eigen::MatrixXd x = gaussian(n, k, rng);
    const Eigen::VectorXd w_star = gaussian(k, 1, rng);
    const Eigen::VectorXd w = gaussian(k, 1, rng);
    const Eigen::VectorXd r = x * w_star;

    const Eigen::MatrixXd op = Eigen::MatrixXd::Identity(n, n) - gamma * p;
    Eigen::MatrixXd rhs(n, k + 1);
    rhs << x, r;
    const Eigen::MatrixXd solved = checked_solve(op, rhs);
    const Eigen::VectorXd v = solved.col(k);
    const Eigen::VectorXd v_hat = solved.leftCols(k) * w;

    const double lhs = 0.5 * weighted_sq_norm(v - v_hat, d);
    const double bound = weighted_sq_norm(r - x * w, d) / (2.0 * (1.0 - gamma) * (1.0 - gamma));
    if (lhs > bound * (1.0 + report.tolerance) + report.tolerance) ++report.violations;
    if (bound > 0) report.max_ratio = std::max(report.max_ratio, lhs / bound);
  }
  return report;
}

Prop1Report check_prop1(const Prop1Options& o, RngStream& rng) {
  if (o.horizons.empty()) throw std::invalid_argument("check_prop1: no horizons");
  std::vector<long> horizons = o.horizons;
  std::sort(horizons.begin(), horizons.end());
  const long t_max = horizons.back();

  // The MDP is fixed by mdp_seed; only the sample streams vary with rng.
  RngStream mdp_rng(o.mdp_seed, Stream::kConstants);
  const int n = o.states;
  const int k = o.features;
  const Eigen::MatrixXd p = random_stochastic(n, n, mdp_rng);
  const Eigen::VectorXd d_pi = stationary_distribution(p);
  const Eigen::MatrixXd x = gaussian(n, k, mdp_rng);
  const Eigen::VectorXd w_star = gaussian(k, 1, mdp_rng);
  const Eigen::VectorXd tilt = gaussian(n, 1, mdp_rng);
  Eigen::VectorXd d_mu = d_pi.array() * (o.behavior_skew * tilt.array()).exp();
  d_mu /= d_mu.sum();
  const Eigen::VectorXd rho = d_pi.array() / d_mu.array();

  const Eigen::MatrixXd psi = checked_solve(Eigen::MatrixXd::Identity(n, n) - o.gamma * p, x);
  const Eigen::VectorXd v = psi * w_star;
  const Eigen::VectorXd r = x * w_star;

  std::vector<double> cdf(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (int s = 0; s < n; ++s) cdf[static_cast<std::size_t>(s)] = (acc += d_mu[s]);

  Prop1Report report;
  report.horizons = horizons;
  report.seeds = o.seeds;
  report.rho_max = rho.maxCoeff();
  std::vector<std::vector<double>> errors(horizons.size());

  for (int seed = 0; seed < o.seeds; ++seed) {
    RngStream sample_rng(rng.next_u64(), Stream::kEnvironment);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd w_sum = Eigen::VectorXd::Zero(k);
    std::size_t next = 0;
    for (long t = 1; t <= t_max; ++t) {
      // Iterate committed before the t-th loss is revealed.
      const Eigen::VectorXd w_t = a.llt().solve(b);
      w_sum += w_t;
      const double u = sample_rng.uniform();
      int s = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      s = std::min(s, n - 1);
      const double reward = r[s] + sample_rng.uniform(-o.noise, o.noise);
      const Eigen::VectorXd xs = x.row(s).transpose();
      a.noalias() += rho[s] * xs * xs.transpose();
      b += rho[s] * reward * xs;
      if (t == horizons[next]) {
        const Eigen::VectorXd w_bar = w_sum / static_cast<double>(t);
        errors[next].push_back(weighted_sq_norm(v - psi * w_bar, d_pi));
        ++next;
      }
    }
  }

  std::vector<double> log_t;
  std::vector<double> log_e;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    const double e = median(errors[i]);
    const auto t = static_cast<double>(horizons[i]);
    report.median_error.push_back(e);
    report.scaled_error.push_back(e * t / std::log1p(t));
    log_t.push_back(std::log(t));
    log_e.push_back(std::log(e));
  }
  report.monotone = std::is_sorted(report.median_error.rbegin(), report.median_error.rend());
  if (horizons.size() >= 2) {
    report.loglog_slope = fitted_slope(log_t, log_e);
    report.scaled_slope = fitted_slope(log_t, report.scaled_error);
  }
  return report;
}

AppcReport check_appc(int case_id, int instances, RngStream& rng) {
  if (case_id < 1 || case_id > 3) throw std::invalid_argument("check_appc: case must be 1, 2 or 3");
  AppcReport report;
  report.case_id = case_id;
  report.instances = instances;
  report.min_gap = instances > 0 ? INFINITY : 0.0;
  for (int i = 0; i < instances; ++i) {
    RandomMdpOptions options;
    options.states = 3 + static_cast<int>(rng.index(6));
    options.actions = 2 + static_cast<int>(rng.index(2));
    const int n_sa = options.states * options.actions;
    options.features = 2 + static_cast<int>(rng.index(static_cast<std::size_t>(n_sa - 3)));
    options.gamma = rng.uniform(0.5, 0.95);
    TabularMdpModel m = random_mdp(options, rng);
    const int d = options.features;

    // Reward features used by the cumulant regression.
    Eigen::MatrixXd phi = m.x;
    Eigen::VectorXd w = gaussian(d, 1, rng);
    if (case_id == 2) {
      const int goals = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(std::min(3, options.states - 1))));
      phi = Eigen::MatrixXd::Zero(n_sa, goals);
      for (int g = 0; g < goals; ++g) phi.col(g) = m.p.col(g);  // E[1{s' = goal g} | s, a]
      w = gaussian(goals, 1, rng);
    }
    m.r = phi * w;
    if (case_id == 3) {
      // eta = raw - Pi_D raw is D-orthogonal to span(X).
      const Eigen::VectorXd raw = gaussian(n_sa, 1, rng);
      const Eigen::VectorXd eta = raw - m.x * projection_weights(m.x, m.d, raw);
      m.r += eta;
    }

    // SF-NR route: SFs in span(X) (TD(1) projection of Psi), cumulant
    // weights by D-weighted regression of r on phi.
    const Eigen::MatrixXd psi = true_sf(m, phi);
    const Eigen::MatrixXd sf_weights = projection_weights(m.x, m.d, psi);
    const Eigen::VectorXd w_c = projection_weights(phi, m.d, m.r);
    const Eigen::VectorXd q_sf = m.x * (sf_weights * w_c);

    const Eigen::VectorXd q_lstd = m.x * lstd_solution(m, 1.0);
    const double gap = (q_sf - q_lstd).cwiseAbs().maxCoeff();
    report.max_gap = std::max(report.max_gap, gap);
    report.min_gap = std::min(report.min_gap, gap);
  }
  return report;
}

}  // namespace contaux::oracle
