#include "contaux/oracle/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contaux::oracle {

double rmsve(std::span<const double> prediction, std::span<const double> truth, std::span<const double> weights) {
  if (prediction.size() != truth.size() || truth.size() != weights.size()) {
    throw std::invalid_argument("rmsve: size mismatch");
  }
  double total = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double e = prediction[i] - truth[i];
    total += weights[i] * e * e;
    mass += weights[i];
  }
  return mass > 0 ? std::sqrt(total / mass) : 0.0;
}

double total_error(const std::vector<std::vector<double>>& history) {
  double te = 0.0;
  for (const auto& row : history) {
    for (double v : row) te += v;
  }
  return te;
}

double last_fraction_total_error(const std::vector<std::vector<double>>& history, double fraction) {
  if (history.empty()) return 0.0;
  const auto t = static_cast<long>(history.size());
  const long count = std::clamp<long>(std::lround(fraction * static_cast<double>(t)), 1, t);
  double te = 0.0;
  for (long i = t - count; i < t; ++i) {
    for (double v : history[static_cast<std::size_t>(i)]) te += v;
  }
  return te;
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double standard_error(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const auto n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

double pooled_standard_error(std::span<const double> a, std::span<const double> b) {
  const double sa = standard_error(a);
  const double sb = standard_error(b);
  return std::sqrt(sa * sa + sb * sb);
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fitted_slope: need >= 2 points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace contaux::oracle
