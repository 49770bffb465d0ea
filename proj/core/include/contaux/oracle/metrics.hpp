#pragma once

#include <span>
#include <vector>

namespace contaux::oracle {

/// sqrt(sum_i w_i (pred_i - truth_i)^2 / sum_i w_i).
double rmsve(std::span<const double> prediction, std::span<const double> truth, std::span<const double> weights);

/// history[t][j] is the RMSVE of GVF j at evaluation t.
double total_error(const std::vector<std::vector<double>>& history);
/// TE over the last round(fraction * T) evaluations (at least one).
double last_fraction_total_error(const std::vector<std::vector<double>>& history, double fraction = 0.1);

double mean(std::span<const double> v);
/// Sample standard error (n - 1 denominator); 0 for n < 2.
double standard_error(std::span<const double> v);
/// sqrt(se_a^2 + se_b^2).
double pooled_standard_error(std::span<const double> a, std::span<const double> b);
/// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

}  // namespace contaux::oracle
