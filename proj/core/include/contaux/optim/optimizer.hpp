#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "contaux/sparse.hpp"

namespace contaux::optim {

/// Per-weight-vector optimizer. `phi` is the update direction (feature vector
/// or eligibility trace) and `z` the overshoot vector, parallel to phi.values.
/// Returns ||theta_new - theta_old||_1.
class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual double update(std::span<double> theta, double delta, const SparseVector& phi,
                        std::span<const double> z) = 0;
  virtual std::unique_ptr<Optimizer> clone() const = 0;
  virtual std::string name() const = 0;
};

using OptimizerPtr = std::unique_ptr<Optimizer>;

class SgdOptimizer final : public Optimizer {
 public:
  explicit SgdOptimizer(double step_size);

  double update(std::span<double> theta, double delta, const SparseVector& phi,
                std::span<const double> z) override;
  std::unique_ptr<Optimizer> clone() const override { return std::make_unique<SgdOptimizer>(*this); }
  std::string name() const override { return "sgd"; }

  double step_size() const { return alpha_; }

 private:
  double alpha_;
};

struct AutoConstants {
  double tau = 1e4;
  double max_delta_beta = 1.0;
  double kappa = 1e-6;
};

/// Meta-descent step-size adaptation with normalization and an overshoot guard.
class AutoOptimizer final : public Optimizer {
 public:
  AutoOptimizer(std::size_t dim, double meta_step, double initial_step, AutoConstants constants = {});

  double update(std::span<double> theta, double delta, const SparseVector& phi,
                std::span<const double> z) override;
  std::unique_ptr<Optimizer> clone() const override { return std::make_unique<AutoOptimizer>(*this); }
  std::string name() const override { return "auto"; }

  /// Dense convenience form; phi and z must have the same dimension as theta.
  double update_dense(std::span<double> theta, double delta, std::span<const double> phi,
                      std::span<const double> z);

  std::size_t dim() const { return alpha_.size(); }
  double meta_step() const { return mu_; }
  const AutoConstants& constants() const { return constants_; }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& h() const { return h_; }
  const std::vector<double>& n() const { return n_; }
  /// True when the last update took the alpha^T z > 1 rescale branch.
  bool last_rescaled() const { return last_rescaled_; }

 private:
  double mu_;
  AutoConstants constants_;
  std::vector<double> alpha_;
  std::vector<double> h_;
  std::vector<double> n_;
  bool last_rescaled_ = false;
};

/// |phi_i| * max(|phi_i|, |x_i - gamma x'_i|), evaluated on phi's support.
/// `x_minus_gamma_xnext` is a dense vector of x - gamma x'.
std::vector<double> overshoot_vector(const SparseVector& phi, std::span<const double> x_minus_gamma_xnext);

/// Dense form over full vectors.
std::vector<double> overshoot_vector(std::span<const double> phi, std::span<const double> x,
                                     std::span<const double> x_next, double gamma);

}  // namespace contaux::optim
