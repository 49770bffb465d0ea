#include "contaux/features/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace contaux::features {

CellEncoder::CellEncoder(int cells, int num_actions, CellFn cell_of, std::string label)
    : cells_(cells), num_actions_(num_actions), cell_of_(std::move(cell_of)), label_(std::move(label)) {
  if (cells_ <= 0 || num_actions_ <= 0) throw std::invalid_argument("cell encoder needs cells > 0 and actions > 0");
  if (!cell_of_) throw std::invalid_argument("cell encoder needs a cell function");
}

void CellEncoder::encode(const Observation& s, ActionId a, SparseFeatures& out) const {
  if (a.index < 0 || a.index >= num_actions_) throw std::out_of_range("action index out of range");
  const int c = std::clamp(cell_of_(s), 0, cells_ - 1);
  out.dim = dim();
  out.clear();
  out.push(static_cast<std::uint32_t>(a.index * cells_ + c), 1.0);
}

TileCoder::TileCoder(int tilings, int tiles_per_dim, Bounds bounds, int num_actions)
    : tilings_(tilings), tiles_(tiles_per_dim), bounds_(bounds), num_actions_(num_actions) {
  if (tilings_ <= 0 || tiles_ <= 0 || num_actions_ <= 0) {
    throw std::invalid_argument("tile coder needs positive tilings, tiles and actions");
  }
  for (std::size_t d = 0; d < kObservationDim; ++d) {
    if (!(bounds_.hi[d] > bounds_.lo[d])) throw std::invalid_argument("tile coder bounds must satisfy hi > lo");
  }
}

std::size_t TileCoder::dim() const {
  return static_cast<std::size_t>(tilings_) * tiles_ * tiles_ * num_actions_;
}

void TileCoder::encode(const Observation& s, ActionId a, SparseFeatures& out) const {
  if (a.index < 0 || a.index >= num_actions_) throw std::out_of_range("action index out of range");
  out.dim = dim();
  out.clear();
  // Tiles are (hi - lo) / (tiles - 1) wide, so every displaced tiling still
  // covers [lo, hi] with exactly `tiles` tiles per dimension.
  std::array<double, kObservationDim> unit{};
  for (std::size_t d = 0; d < kObservationDim; ++d) {
    const double v = std::clamp(s[d], bounds_.lo[d], bounds_.hi[d]);
    const double span = tiles_ > 1 ? tiles_ - 1 : 1;
    unit[d] = (v - bounds_.lo[d]) / (bounds_.hi[d] - bounds_.lo[d]) * span;
  }
  const std::size_t per_tiling = static_cast<std::size_t>(tiles_) * tiles_;
  const std::size_t base = static_cast<std::size_t>(a.index) * tilings_ * per_tiling;
  for (int k = 0; k < tilings_; ++k) {
    const double ox = static_cast<double>(k) / tilings_;
    const double oy = static_cast<double>((3 * k) % tilings_) / tilings_;
    const int ix = std::clamp(static_cast<int>(std::floor(unit[0] + ox)), 0, tiles_ - 1);
    const int iy = std::clamp(static_cast<int>(std::floor(unit[1] + oy)), 0, tiles_ - 1);
    out.push(static_cast<std::uint32_t>(base + k * per_tiling + iy * tiles_ + ix), 1.0);
  }
}

std::string TileCoder::describe() const {
  std::ostringstream os;
  os << "tilecoder(" << tilings_ << "x" << tiles_ << ")";
  return os.str();
}

}  // namespace contaux::features
