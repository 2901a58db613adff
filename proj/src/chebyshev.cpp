#include "chebyclust/chebyshev.hpp"

#include <cmath>
#include <string>

#include "chebyclust/error.hpp"

namespace chebyclust {

CovarianceFactor CovarianceFactor::of(const Cluster& cluster, double ridge) {
  const std::size_t n = cluster.dims();
  if (cluster.count == 0) throw InvalidInput("covariance of an empty cluster");
  if (!(ridge >= 0.0)) throw InvalidInput("ridge must be non-negative");

  CovarianceFactor f;
  f.n_ = n;
  f.lower_.assign(n * n, 0.0);
  const double inv_count = 1.0 / static_cast<double>(cluster.count);
  auto a = [&](std::size_t r, std::size_t c) {
    return cluster.scatter(r, c) * inv_count + (r == c ? ridge : 0.0);
  };
  auto l = [&](std::size_t r, std::size_t c) -> double& { return f.lower_[r * n + c]; };

  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw SingularCovariance("covariance of cluster " + std::to_string(cluster.id) +
                               " is not positive definite (ridge " + std::to_string(ridge) +
                               ")");
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return f;
}

double CovarianceFactor::depth(std::span<const double> x, std::span<const double> mean) const {
  // Forward substitution L y = (x - mean); depth = |y|^2.
  constexpr std::size_t kStack = 8;
  double stack[kStack];
  std::vector<double> heap;
  double* y = stack;
  if (n_ > kStack) {
    heap.resize(n_);
    y = heap.data();
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = x[i] - mean[i];
    const double* row = lower_.data() + i * n_;
    for (std::size_t k = 0; k < i; ++k) s -= row[k] * y[k];
    y[i] = s / row[i];
    sum += y[i] * y[i];
  }
  return sum;
}

double CovarianceFactor::determinant() const noexcept {
  double d = 1.0;
  for (std::size_t i = 0; i < n_; ++i) d *= lower_[i * n_ + i];
  return d * d;
}

double mahalanobis_depth(std::span<const double> x, const Cluster& cluster, double ridge) {
  if (x.size() != cluster.dims())
    throw InvalidInput("feature dimension " + std::to_string(x.size()) +
                       " does not match cluster dimension " +
                       std::to_string(cluster.dims()));
  const double d = CovarianceFactor::of(cluster, ridge).depth(x, cluster.mean);
  if (!std::isfinite(d))
    throw SingularCovariance("non-finite depth against cluster " + std::to_string(cluster.id));
  return d;
}

bool admits(double depth, const LearnerConfig& config) noexcept {
  return depth < config.chebyshev_param;
}

double lower_bound_confidence(const LearnerConfig& config, std::size_t n_dims) noexcept {
  return 1.0 - static_cast<double>(n_dims) / config.chebyshev_param;
}

DeviationResult evaluate_deviation(std::span<const double> x, const Cluster& cluster,
                                   const CovarianceFactor& factor,
                                   const LearnerConfig& config) {
  DeviationResult r;
  r.cluster_id = cluster.id;
  r.depth = factor.depth(x, cluster.mean);
  if (!std::isfinite(r.depth))
    throw SingularCovariance("non-finite depth against cluster " + std::to_string(cluster.id));
  r.admitted = admits(r.depth, config);
  return r;
}

}  // namespace chebyclust
