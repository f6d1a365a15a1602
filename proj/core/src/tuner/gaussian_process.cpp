#include "recbench/tuner/gaussian_process.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace recbench {
namespace {

constexpr std::array<double, 8> kLengthscales = {0.03, 0.06, 0.1, 0.2, 0.35, 0.5, 0.8, 1.5};
constexpr std::array<double, 5> kNoises = {1e-6, 1e-4, 1e-3, 1e-2, 1e-1};

double matern52(double r, double lengthscale) {
  const double s = std::sqrt(5.0) * r / lengthscale;
  return (1.0 + s + s * s / 3.0) * std::exp(-s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(d);
}

}  // namespace

double GaussianProcess::kernel(std::span<const double> a, std::span<const double> b) const {
  return matern52(distance(a, b), lengthscale_);
}

void GaussianProcess::fit(std::vector<std::vector<double>> inputs, std::vector<double> targets) {
  if (inputs.size() != targets.size() || inputs.empty()) {
    throw std::invalid_argument("GaussianProcess::fit: need matching, nonempty data");
  }
  inputs_ = std::move(inputs);
  const auto n = static_cast<Eigen::Index>(inputs_.size());

  double mean = 0.0;
  for (const double y : targets) mean += y;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const double y : targets) var += (y - mean) * (y - mean);
  var /= static_cast<double>(n);
  y_mean_ = mean;
  y_scale_ = var > 0.0 ? std::sqrt(var) : 1.0;
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = (targets[static_cast<std::size_t>(i)] - y_mean_) / y_scale_;

  Eigen::MatrixXd dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dist(i, j) = distance(inputs_[static_cast<std::size_t>(i)], inputs_[static_cast<std::size_t>(j)]);
    }
  }

  double best_lml = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best_l;
  Eigen::VectorXd best_alpha;
  for (const double ls : kLengthscales) {
    for (const double noise : kNoises) {
      Eigen::MatrixXd k(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) k(i, j) = matern52(dist(i, j), ls);
        k(i, i) += noise;
      }
      Eigen::LLT<Eigen::MatrixXd> llt(k);
      if (llt.info() != Eigen::Success) continue;
      const Eigen::VectorXd alpha = llt.solve(y);
      const Eigen::MatrixXd l = llt.matrixL();
      const double log_det = 2.0 * l.diagonal().array().log().sum();
      const double lml = -0.5 * y.dot(alpha) - 0.5 * log_det -
                         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
      if (lml > best_lml) {
        best_lml = lml;
        lengthscale_ = ls;
        noise_ = noise;
        best_l = l;
        best_alpha = alpha;
      }
    }
  }
  if (!std::isfinite(best_lml)) throw std::runtime_error("GaussianProcess::fit: no stable kernel");

  alpha_.assign(best_alpha.data(), best_alpha.data() + n);
  chol_.resize(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) chol_[static_cast<std::size_t>(i * n + j)] = best_l(i, j);
  }
}

GaussianProcess::Prediction GaussianProcess::predict(std::span<const double> x) const {
  const std::size_t n = inputs_.size();
  if (n == 0) return {y_mean_, y_scale_};
  std::vector<double> k_star(n);
  for (std::size_t i = 0; i < n; ++i) k_star[i] = kernel(x, inputs_[i]);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += k_star[i] * alpha_[i];
  // v = L^-1 k*, variance = k(x,x) - v.v
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = k_star[i];
    for (std::size_t j = 0; j < i; ++j) s -= chol_[i * n + j] * v[j];
    v[i] = s / chol_[i * n + i];
  }
  double var = 1.0;
  for (const double vi : v) var -= vi * vi;
  var = std::max(var, 1e-12);
  return {y_mean_ + y_scale_ * mean, y_scale_ * std::sqrt(var)};
}

double expected_improvement(double mean, double stddev, double best, double xi) {
  if (stddev <= 0.0) return std::max(mean - best - xi, 0.0);
  const double z = (mean - best - xi) / stddev;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return (mean - best - xi) * cdf + stddev * pdf;
}

}  // namespace recbench
