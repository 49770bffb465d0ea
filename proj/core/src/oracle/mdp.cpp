#include "contaux/oracle/mdp.hpp"

#include <cmath>
#include <sstream>

namespace contaux::oracle {

namespace {

Eigen::MatrixXd transition_operator(const TabularMdpModel& m, double scale) {
  const int n = m.num_pairs();
  return Eigen::MatrixXd::Identity(n, n) - scale * (m.p_gamma * m.pi);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("TabularMdpModel: " + what);
}

}  // namespace

void TabularMdpModel::validate() const {
  const int n_s = num_states;
  const int n_sa = num_pairs();
  require(n_s > 0 && num_actions > 0, "empty model");
  require(p_gamma.rows() == n_sa && p_gamma.cols() == n_s, "P_gamma shape");
  require(pi.rows() == n_s && pi.cols() == n_sa, "Pi shape");
  require(r.size() == n_sa, "r size");
  require(x.rows() == n_sa, "X rows");
  require(d.size() == 0 || d.size() == n_sa, "d size");
  if (p.size() != 0) {
    require(p.rows() == n_sa && p.cols() == n_s, "P shape");
    for (int i = 0; i < n_sa; ++i) {
      require(std::abs(p.row(i).sum() - 1.0) < 1e-9, "P row " + std::to_string(i) + " not stochastic");
    }
    require(((p_gamma.array() - p.array()) <= 1e-12).all(), "P_gamma exceeds P");
  }
  require((p_gamma.array() >= 0).all(), "negative P_gamma");
  for (int s = 0; s < n_s; ++s) {
    require(std::abs(pi.row(s).sum() - 1.0) < 1e-9, "Pi row " + std::to_string(s) + " not stochastic");
  }
}

Eigen::MatrixXd checked_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double pivot_threshold) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double smallest = pivots.size() ? pivots.minCoeff() : 0.0;
  if (!(smallest >= pivot_threshold)) {
    std::ostringstream os;
    os << "singular linear system (smallest pivot " << smallest << ")";
    throw SingularSystemError(os.str());
  }
  return lu.solve(b);
}

Eigen::VectorXd true_q(const TabularMdpModel& m) { return checked_solve(transition_operator(m, 1.0), m.r); }

Eigen::MatrixXd true_sf(const TabularMdpModel& m) { return true_sf(m, m.x); }

Eigen::MatrixXd true_sf(const TabularMdpModel& m, const Eigen::MatrixXd& phi) {
  if (phi.cols() == 0) return Eigen::MatrixXd::Zero(m.num_pairs(), 0);
  return checked_solve(transition_operator(m, 1.0), phi);
}

Eigen::VectorXd lstd_solution(const TabularMdpModel& m, double lambda) {
  const Eigen::MatrixXd left = transition_operator(m, lambda);
  Eigen::MatrixXd rhs(m.num_pairs(), m.x.cols() + 1);
  rhs << transition_operator(m, 1.0) * m.x, m.r;
  const Eigen::MatrixXd solved = checked_solve(left, rhs);
  const Eigen::MatrixXd xtd = m.x.transpose() * m.d.asDiagonal();
  const Eigen::MatrixXd a = xtd * solved.leftCols(m.x.cols());
  const Eigen::VectorXd b = xtd * solved.col(m.x.cols());
  return checked_solve(a, b);
}

double mspbe(const TabularMdpModel& m, const Eigen::VectorXd& w) {
  const Eigen::VectorXd xw = m.x * w;
  const Eigen::VectorXd delta = m.r + m.p_gamma * (m.pi * xw) - xw;
  const Eigen::MatrixXd xtd = m.x.transpose() * m.d.asDiagonal();
  const Eigen::VectorXd g = xtd * delta;
  Eigen::MatrixXd c = xtd * m.x;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(c);
  Eigen::VectorXd y;
  if (ldlt.info() == Eigen::Success && ldlt.isPositive() && ldlt.vectorD().minCoeff() > 1e-12) {
    y = ldlt.solve(g);
  } else {
    c.diagonal().array() += 1e-8;
    y = c.ldlt().solve(g);
  }
  return g.dot(y);
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p, Eigen::VectorXd init, double tol, int max_iters) {
  const int n = static_cast<int>(p.rows());
  Eigen::RowVectorXd v = init.size() == n ? Eigen::RowVectorXd(init.transpose())
                                          : Eigen::RowVectorXd::Constant(n, 1.0 / n);
  v /= v.sum();
  for (int it = 0; it < max_iters; ++it) {
    Eigen::RowVectorXd next = 0.5 * (v + v * p);
    next /= next.sum();
    const double change = (next - v).cwiseAbs().sum();
    v = next;
    if (change < tol) break;
  }
  return v.transpose();
}

Eigen::VectorXd stationary_pair_distribution(const TabularMdpModel& m) {
  const Eigen::MatrixXd& p = m.p.size() ? m.p : m.p_gamma;
  Eigen::MatrixXd chain = m.pi * p;  // n_s x n_s
  for (int s = 0; s < chain.rows(); ++s) {
    const double total = chain.row(s).sum();
    if (total > 0) chain.row(s) /= total;
  }
  const Eigen::VectorXd ds = stationary_distribution(chain);
  Eigen::VectorXd d(m.num_pairs());
  for (int s = 0; s < m.num_states; ++s) {
    for (int a = 0; a < m.num_actions; ++a) d[m.sa(s, a)] = ds[s] * m.pi(s, m.sa(s, a));
  }
  return d;
}

Eigen::MatrixXd random_stochastic(int rows, int cols, RngStream& rng) {
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = rng.uniform(0.05, 1.0);
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

TabularMdpModel random_mdp(const RandomMdpOptions& o, RngStream& rng) {
  TabularMdpModel m;
  m.num_states = o.states;
  m.num_actions = o.actions;
  const int n_sa = o.states * o.actions;
  m.p = random_stochastic(n_sa, o.states, rng);
  m.p_gamma = o.gamma * m.p;
  m.pi = Eigen::MatrixXd::Zero(o.states, n_sa);
  const Eigen::MatrixXd probs = random_stochastic(o.states, o.actions, rng);
  for (int s = 0; s < o.states; ++s) {
    for (int a = 0; a < o.actions; ++a) m.pi(s, m.sa(s, a)) = probs(s, a);
  }
  m.x.resize(n_sa, o.features);
  for (int i = 0; i < n_sa; ++i) {
    for (int k = 0; k < o.features; ++k) m.x(i, k) = rng.normal(0.0, 1.0);
  }
  Eigen::VectorXd w(o.features);
  for (int k = 0; k < o.features; ++k) w[k] = rng.normal(0.0, 1.0);
  m.r = m.x * w;
  m.d = stationary_pair_distribution(m);
  return m;
}

}  // namespace contaux::oracle
