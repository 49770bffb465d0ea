#include <cmath>

#include "contaux/learners/learner.hpp"

namespace contaux::learners {

void Workspace::prepare(std::size_t dim, int actions) {
  dense.assign(dim, 0.0);
  x_next.assign(static_cast<std::size_t>(actions), SparseFeatures(dim));
  x = SparseFeatures(dim);
  x_next_bar = SparseFeatures(dim);
}

void Workspace::expected_next(const features::StateActionEncoder& enc, const Policy& pi,
                              const Observation& s_next) {
  const int actions = enc.num_actions();
  pi.probabilities(s_next, std::span<double>(pi_next.data(), actions));
  x_next_bar.dim = enc.dim();
  x_next_bar.clear();
  for (int a = 0; a < actions; ++a) {
    enc.encode(s_next, ActionId(a), x_next[a]);
    if (pi_next[a] == 0.0) continue;
    for (std::size_t k = 0; k < x_next[a].nnz(); ++k) {
      x_next_bar.push(x_next[a].indices[k], pi_next[a] * x_next[a].values[k]);
    }
  }
}

void Workspace::overshoot_for(const SparseVector& phi, double gamma_next) {
  for (std::size_t k = 0; k < x.nnz(); ++k) dense[x.indices[k]] += x.values[k];
  if (gamma_next != 0.0) {
    for (std::size_t k = 0; k < x_next_bar.nnz(); ++k) dense[x_next_bar.indices[k]] -= gamma_next * x_next_bar.values[k];
  }
  overshoot.resize(phi.nnz());
  for (std::size_t k = 0; k < phi.nnz(); ++k) {
    const double p = std::abs(phi.values[k]);
    overshoot[k] = p * std::max(p, std::abs(dense[phi.indices[k]]));
  }
  for (std::size_t k = 0; k < x.nnz(); ++k) dense[x.indices[k]] = 0.0;
  for (std::size_t k = 0; k < x_next_bar.nnz(); ++k) dense[x_next_bar.indices[k]] = 0.0;
}

}  // namespace contaux::learners
