#include "chebyclust/core.hpp"

#include <cmath>
#include <string>

#include "chebyclust/error.hpp"

namespace chebyclust {

Dataset::Dataset(std::size_t dims, std::vector<double> values)
    : dims_(dims), values_(std::move(values)) {
  if (dims_ == 0) throw InvalidInput("dataset dimensionality must be positive");
  if (values_.size() % dims_ != 0)
    throw InvalidInput("dataset value count " + std::to_string(values_.size()) +
                       " is not a multiple of dimensionality " + std::to_string(dims_));
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidInput("dataset contains a non-finite value");
}

Dataset Dataset::from_rows(const std::vector<FeatureVector>& rows) {
  if (rows.empty()) throw InvalidInput("dataset needs at least one row");
  const std::size_t dims = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * dims);
  for (const auto& r : rows) {
    if (r.size() != dims) throw InvalidInput("rows have inconsistent dimensionality");
    values.insert(values.end(), r.begin(), r.end());
  }
  return Dataset(dims, std::move(values));
}

Dataset Dataset::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return Dataset(dims_, std::move(v));
}

Cluster Cluster::singleton(ClusterId id, ExampleIndex index, std::span<const double> x) {
  Cluster c;
  c.id = id;
  c.count = 1;
  c.mean.assign(x.begin(), x.end());
  c.scatter = SquareMatrix(x.size());
  c.members.push_back(index);
  return c;
}

void Cluster::add(ExampleIndex index, std::span<const double> x) {
  const std::size_t n = dims();
  if (x.size() != n)
    throw InvalidInput("feature dimension " + std::to_string(x.size()) +
                       " does not match cluster dimension " + std::to_string(n));
  if (count == 0) throw InvalidInput("cannot update an empty cluster");

  // Centered rank-1 update:
  //   mean'    = mean + delta / (n+1)
  //   scatter' = scatter + n/(n+1) * delta delta^T
  const double old_count = static_cast<double>(count);
  const double new_count = old_count + 1.0;
  FeatureVector delta(n);
  for (std::size_t k = 0; k < n; ++k) delta[k] = x[k] - mean[k];
  for (std::size_t k = 0; k < n; ++k) mean[k] += delta[k] / new_count;

  const double weight = old_count / new_count;
  for (std::size_t r = 0; r < n; ++r) {
    const double wr = weight * delta[r];
    for (std::size_t c = r; c < n; ++c) {
      scatter(r, c) += wr * delta[c];
      if (c != r) scatter(c, r) = scatter(r, c);
    }
  }
  ++count;
  members.push_back(index);
}

Cluster update_statistics(Cluster cluster, ExampleIndex index, std::span<const double> x) {
  cluster.add(index, x);
  return cluster;
}

SquareMatrix covariance(const Cluster& cluster) {
  const std::size_t n = cluster.dims();
  SquareMatrix cov(n);
  const double inv = 1.0 / static_cast<double>(cluster.count);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) cov(r, c) = cluster.scatter(r, c) * inv;
  return cov;
}

void LearnerConfig::validate() const {
  if (!(chebyshev_param > 0.0) || !std::isfinite(chebyshev_param))
    throw InvalidInput("chebyshev_param must be a positive finite number");
  if (!(ridge >= 0.0) || !std::isfinite(ridge))
    throw InvalidInput("ridge must be a non-negative finite number");
}

}  // namespace chebyclust
