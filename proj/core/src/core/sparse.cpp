#include "contaux/sparse.hpp"

#include <cmath>

namespace contaux {

double SparseVector::l1() const {
  double acc = 0.0;
  for (double v : values) acc += std::abs(v);
  return acc;
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dim, 0.0);
  for (std::size_t k = 0; k < indices.size(); ++k) out[indices[k]] += values[k];
  return out;
}

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector out(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) out.push(static_cast<std::uint32_t>(i), dense[i]);
  }
  return out;
}

}  // namespace contaux
