#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace contaux {

/// Sparse vector as parallel index/value arrays. Encoders emit indices in
/// strictly increasing order; accumulated vectors (traces) need not be sorted.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;
  std::size_t dim = 0;

  SparseVector() = default;
  explicit SparseVector(std::size_t d) : dim(d) {}

  std::size_t nnz() const { return indices.size(); }
  bool empty() const { return indices.empty(); }

  void clear() {
    indices.clear();
    values.clear();
  }

  void push(std::uint32_t i, double v) {
    indices.push_back(i);
    values.push_back(v);
  }

  double dot(std::span<const double> dense) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < indices.size(); ++k) acc += values[k] * dense[indices[k]];
    return acc;
  }

  double l1() const;
  std::vector<double> to_dense() const;
  static SparseVector from_dense(std::span<const double> dense);
};

using SparseFeatures = SparseVector;

}  // namespace contaux
