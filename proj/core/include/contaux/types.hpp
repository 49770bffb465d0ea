#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>

namespace contaux {

// Every environment in the workbench is two-dimensional: grid (col, row),
// planar (x, y), or Mountain Car (position, velocity).
inline constexpr std::size_t kObservationDim = 2;

struct Observation {
  std::array<double, kObservationDim> coords{};

  constexpr Observation() = default;
  constexpr Observation(double a, double b) : coords{a, b} {}

  constexpr double operator[](std::size_t i) const { return coords[i]; }
  constexpr double& operator[](std::size_t i) { return coords[i]; }
  constexpr double x() const { return coords[0]; }
  constexpr double y() const { return coords[1]; }

  bool finite() const { return std::isfinite(coords[0]) && std::isfinite(coords[1]); }

  friend constexpr bool operator==(const Observation&, const Observation&) = default;
};

struct ActionId {
  int index = 0;

  constexpr ActionId() = default;
  constexpr explicit ActionId(int i) : index(i) {}

  friend constexpr auto operator<=>(const ActionId&, const ActionId&) = default;
};

/// One step of experience as seen by a single GVF learner: (S_t, A_t, S_{t+1})
/// together with that GVF's cumulant C_{t+1} and discount gamma_{t+1}.
struct Transition {
  Observation s;
  ActionId a;
  Observation s_next;
  double cumulant = 0.0;
  double discount_next = 0.0;
};

}  // namespace contaux
