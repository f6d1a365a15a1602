#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace recbench {

/// Exact GP regression with an isotropic Matern-5/2 kernel on the encoded
/// unit cube. Targets are standardized internally; the lengthscale and noise
/// level are picked by maximizing the log marginal likelihood over a fixed
/// grid, so fitting is deterministic.
class GaussianProcess {
 public:
  struct Prediction {
    double mean = 0.0;
    double stddev = 0.0;
  };

  void fit(std::vector<std::vector<double>> inputs, std::vector<double> targets);

  Prediction predict(std::span<const double> x) const;

  double lengthscale() const noexcept { return lengthscale_; }
  double noise() const noexcept { return noise_; }
  std::size_t size() const noexcept { return inputs_.size(); }

 private:
  double kernel(std::span<const double> a, std::span<const double> b) const;

  std::vector<std::vector<double>> inputs_;
  std::vector<double> alpha_;        ///< K^-1 (y - mean), standardized
  std::vector<double> chol_;         ///< lower Cholesky factor of K, row-major
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  double lengthscale_ = 0.3;
  double noise_ = 1e-4;
};

/// EI for maximization: E[max(f - best - xi, 0)] under N(mean, stddev^2).
double expected_improvement(double mean, double stddev, double best, double xi = 0.0);

}  // namespace recbench
