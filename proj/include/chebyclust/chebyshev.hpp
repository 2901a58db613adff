#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chebyclust/core.hpp"

namespace chebyclust {

struct DeviationResult {
  double depth = 0.0;
  ClusterId cluster_id = 0;
  bool admitted = false;
};

// Cholesky factor L of (covariance + ridge * I), L L^T = Sigma + ridge I.
// Cached per cluster so each depth query costs one triangular solve.
class CovarianceFactor {
 public:
  CovarianceFactor() = default;

  // Throws SingularCovariance if the regularized covariance is not
  // positive definite.
  static CovarianceFactor of(const Cluster& cluster, double ridge);

  // (x - mean)^T (Sigma + ridge I)^{-1} (x - mean)
  double depth(std::span<const double> x, std::span<const double> mean) const;

  double determinant() const noexcept;
  std::size_t dims() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> lower_;  // row-major, upper part unused
};

// Squared Mahalanobis-type deviation of `x` from `cluster` under a ridge
// regularized covariance. Errors: InvalidInput on dimension mismatch,
// SingularCovariance when ridge = 0 and the covariance is singular.
double mahalanobis_depth(std::span<const double> x, const Cluster& cluster, double ridge);

// depth < C_p (strict).
bool admits(double depth, const LearnerConfig& config) noexcept;

// 1 - n_dims / C_p. Negative in the vacuous regime C_p < n_dims.
double lower_bound_confidence(const LearnerConfig& config, std::size_t n_dims) noexcept;

DeviationResult evaluate_deviation(std::span<const double> x, const Cluster& cluster,
                                   const CovarianceFactor& factor,
                                   const LearnerConfig& config);

}  // namespace chebyclust
