#include "contaux/optim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contaux::optim {

SgdOptimizer::SgdOptimizer(double step_size) : alpha_(step_size) {
  if (!(step_size >= 0.0)) throw std::invalid_argument("sgd step size must be >= 0");
}

double SgdOptimizer::update(std::span<double> theta, double delta, const SparseVector& phi,
                            std::span<const double>) {
  if (phi.dim != theta.size()) throw std::invalid_argument("sgd: dimension mismatch");
  double change = 0.0;
  for (std::size_t k = 0; k < phi.nnz(); ++k) {
    double& w = theta[phi.indices[k]];
    const double before = w;
    w += alpha_ * delta * phi.values[k];
    change += std::abs(w - before);
  }
  return change;
}

AutoOptimizer::AutoOptimizer(std::size_t dim, double meta_step, double initial_step, AutoConstants constants)
    : mu_(meta_step), constants_(constants), alpha_(dim, initial_step), h_(dim, 0.0), n_(dim, 0.0) {
  if (!(meta_step >= 0.0)) throw std::invalid_argument("auto meta step must be >= 0");
  if (!(initial_step > 0.0)) throw std::invalid_argument("auto initial step must be > 0");
}

double AutoOptimizer::update(std::span<double> theta, double delta, const SparseVector& phi,
                             std::span<const double> z) {
  if (phi.dim != theta.size() || theta.size() != alpha_.size() || z.size() != phi.nnz()) {
    throw std::invalid_argument("auto: dimension mismatch");
  }
  const std::size_t nnz = phi.nnz();
  const double inv_tau = 1.0 / constants_.tau;
  const double m = constants_.max_delta_beta;

  // n-update: the increment vanishes where phi_j = 0, so touching only the
  // support of phi is the full "for all j" loop.
  for (std::size_t k = 0; k < nnz; ++k) {
    const std::uint32_t j = phi.indices[k];
    const double p = phi.values[k];
    n_[j] += inv_tau * alpha_[j] * std::abs(p) * (std::abs(h_[j] * delta * p) - n_[j]);
  }

  for (std::size_t k = 0; k < nnz; ++k) {
    const double p = phi.values[k];
    if (p == 0.0) continue;
    const std::uint32_t i = phi.indices[k];
    double dbeta = 0.0;
    if (n_[i] > 0.0) dbeta = std::clamp(h_[i] * delta * p / n_[i], -m, m);
    const double grown = alpha_[i] * std::exp(mu_ * dbeta);
    alpha_[i] = std::min(std::max(grown, constants_.kappa), 1.0 / std::abs(p));
  }

  double alpha_z = 0.0;
  double z_l1 = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) {
    alpha_z += alpha_[phi.indices[k]] * z[k];
    z_l1 += std::abs(z[k]);
  }
  last_rescaled_ = alpha_z > 1.0;
  if (last_rescaled_) {
    const double cap = 1.0 / z_l1;
    for (std::size_t k = 0; k < nnz; ++k) {
      if (z[k] != 0.0) alpha_[phi.indices[k]] = std::min(alpha_[phi.indices[k]], cap);
    }
  }

  double change = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) {
    const std::uint32_t i = phi.indices[k];
    const double p = phi.values[k];
    const double step = alpha_[i] * delta * p;
    const double before = theta[i];
    theta[i] += step;
    change += std::abs(theta[i] - before);
    h_[i] = h_[i] * (1.0 - alpha_[i] * std::abs(p)) + step;
  }
  return change;
}

double AutoOptimizer::update_dense(std::span<double> theta, double delta, std::span<const double> phi,
                                   std::span<const double> z) {
  if (phi.size() != theta.size() || z.size() != theta.size()) {
    throw std::invalid_argument("auto: dimension mismatch");
  }
  SparseVector sp = SparseVector::from_dense(phi);
  std::vector<double> zs(sp.nnz());
  for (std::size_t k = 0; k < sp.nnz(); ++k) zs[k] = z[sp.indices[k]];
  return update(theta, delta, sp, zs);
}

std::vector<double> overshoot_vector(const SparseVector& phi, std::span<const double> x_minus_gamma_xnext) {
  std::vector<double> z(phi.nnz());
  for (std::size_t k = 0; k < phi.nnz(); ++k) {
    const double p = std::abs(phi.values[k]);
    z[k] = p * std::max(p, std::abs(x_minus_gamma_xnext[phi.indices[k]]));
  }
  return z;
}

std::vector<double> overshoot_vector(std::span<const double> phi, std::span<const double> x,
                                     std::span<const double> x_next, double gamma) {
  if (phi.size() != x.size() || x.size() != x_next.size()) {
    throw std::invalid_argument("overshoot_vector: dimension mismatch");
  }
  std::vector<double> z(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double p = std::abs(phi[i]);
    z[i] = p * std::max(p, std::abs(x[i] - gamma * x_next[i]));
  }
  return z;
}

}  // namespace contaux::optim
