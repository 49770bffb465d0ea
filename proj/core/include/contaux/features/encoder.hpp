#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include "contaux/sparse.hpp"
#include "contaux/types.hpp"

namespace contaux::features {

/// State-action feature map x(s, a). Features are action-sliced: action a
/// owns the index block [a * per_action_dim, (a + 1) * per_action_dim).
class StateActionEncoder {
 public:
  virtual ~StateActionEncoder() = default;

  virtual std::size_t dim() const = 0;
  virtual int num_actions() const = 0;
  /// Number of active (value 1) indices per query.
  virtual std::size_t active_count() const = 0;
  virtual void encode(const Observation& s, ActionId a, SparseFeatures& out) const = 0;
  virtual std::string describe() const = 0;

  std::size_t per_action_dim() const { return dim() / static_cast<std::size_t>(num_actions()); }

  SparseFeatures featurize(const Observation& s, ActionId a) const {
    SparseFeatures out(dim());
    encode(s, a, out);
    return out;
  }
};

using EncoderPtr = std::shared_ptr<const StateActionEncoder>;
using CellFn = std::function<int(const Observation&)>;

/// One active index per query: a * cells + cell(s).
class CellEncoder : public StateActionEncoder {
 public:
  CellEncoder(int cells, int num_actions, CellFn cell_of, std::string label);

  std::size_t dim() const override { return static_cast<std::size_t>(cells_) * num_actions_; }
  int num_actions() const override { return num_actions_; }
  std::size_t active_count() const override { return 1; }
  void encode(const Observation& s, ActionId a, SparseFeatures& out) const override;
  std::string describe() const override { return label_; }

  int cells() const { return cells_; }
  int cell(const Observation& s) const { return cell_of_(s); }

 private:
  int cells_;
  int num_actions_;
  CellFn cell_of_;
  std::string label_;
};

/// One-hot over grid cells.
class TabularEncoder final : public CellEncoder {
 public:
  TabularEncoder(int cells, int num_actions, CellFn cell_of)
      : CellEncoder(cells, num_actions, std::move(cell_of), "tabular") {}
};

/// Piecewise-constant aggregation of a continuous space into `cells` regions.
class StateAggregation final : public CellEncoder {
 public:
  StateAggregation(int cells, int num_actions, CellFn cell_of)
      : CellEncoder(cells, num_actions, std::move(cell_of), "aggregation") {}
};

struct Bounds {
  std::array<double, kObservationDim> lo{};
  std::array<double, kObservationDim> hi{};
};

/// Grid tile coder over the 2-D observation, no hashing.
/// Tiles are (hi - lo) / (tiles - 1) wide; tiling k is displaced by
/// (k / T, (3k mod T) / T) of a tile width.
class TileCoder final : public StateActionEncoder {
 public:
  TileCoder(int tilings, int tiles_per_dim, Bounds bounds, int num_actions);

  std::size_t dim() const override;
  int num_actions() const override { return num_actions_; }
  std::size_t active_count() const override { return static_cast<std::size_t>(tilings_); }
  void encode(const Observation& s, ActionId a, SparseFeatures& out) const override;
  std::string describe() const override;

  int tilings() const { return tilings_; }
  int tiles_per_dim() const { return tiles_; }
  const Bounds& bounds() const { return bounds_; }

 private:
  int tilings_;
  int tiles_;
  Bounds bounds_;
  int num_actions_;
};

}  // namespace contaux::features
