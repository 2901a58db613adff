#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace chebyclust {

using FeatureVector = std::vector<double>;
using ClusterId = std::size_t;
using ExampleIndex = std::size_t;

// M examples of fixed dimensionality N, stored row-major.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t dims, std::vector<double> values);

  static Dataset from_rows(const std::vector<FeatureVector>& rows);

  std::size_t size() const noexcept { return dims_ == 0 ? 0 : values_.size() / dims_; }
  std::size_t dims() const noexcept { return dims_; }
  std::span<const double> row(ExampleIndex i) const {
    return {values_.data() + i * dims_, dims_};
  }
  std::span<const double> values() const noexcept { return values_; }

  // Every coordinate multiplied by `factor`.
  Dataset scaled(double factor) const;

 private:
  std::size_t dims_ = 0;
  std::vector<double> values_;
};

// Dense square matrix, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Running statistics of one decomposition. `scatter` is the sum of outer
// products of deviations from `mean`.
struct Cluster {
  ClusterId id = 0;
  std::size_t count = 0;
  FeatureVector mean;
  SquareMatrix scatter;
  std::vector<ExampleIndex> members;

  // A one-member cluster holding example `index` with features `x`.
  static Cluster singleton(ClusterId id, ExampleIndex index, std::span<const double> x);

  std::size_t dims() const noexcept { return mean.size(); }

  // In-place rank-1 update; O(N^2).
  void add(ExampleIndex index, std::span<const double> x);

  bool operator==(const Cluster&) const = default;
};

// Returns `cluster` with `x` (example `index`) appended.
Cluster update_statistics(Cluster cluster, ExampleIndex index, std::span<const double> x);

// Population covariance, scatter / count.
SquareMatrix covariance(const Cluster& cluster);

// Default ridge is a per-channel standard deviation floor of 0.01 on the
// [0,1] feature scale. Much smaller values leave fresh two-member clusters
// admitting only points within a fraction of one 8-bit level of their
// founding segment, so C_p stops influencing the cluster count.
inline constexpr double kDefaultRidge = 1e-4;

struct LearnerConfig {
  double chebyshev_param = 7.0;
  double ridge = kDefaultRidge;
  std::uint64_t seed = 0;
  // Assign to a uniformly random qualifying cluster instead of the
  // lowest-depth one.
  bool noisy_association = false;

  // Throws InvalidInput unless chebyshev_param > 0 and ridge >= 0.
  void validate() const;

  // True when chebyshev_param <= dims, where the lower probability bound
  // 1 - dims / chebyshev_param carries no information.
  bool vacuous_bound(std::size_t dims) const noexcept {
    return chebyshev_param <= static_cast<double>(dims);
  }
};

struct SeriesPoint {
  std::size_t x = 0;
  double value = 0.0;

  bool operator==(const SeriesPoint&) const = default;
};

struct RunResult {
  std::vector<ClusterId> assignments;
  // (examples processed, Err1)
  std::vector<SeriesPoint> err1_series;
  // (cluster count at formation, Err2)
  std::vector<SeriesPoint> err2_series;
  std::size_t cluster_count = 0;
  // Mean per-example L2 deviation from the cluster mean on the 0-255 scale.
  double total_reconstruction_error = 0.0;
  double lower_bound_confidence = 0.0;
  bool vacuous_bound = false;

  double final_err_val = 0.0;
  double cumulative_err_val = 0.0;
  // C_p * det(Sigma_q + ridge I) minimised over clusters; diagnostic only.
  double err1_bound_diagnostic = 0.0;

  std::vector<Cluster> clusters;

  double final_err1() const noexcept { return err1_series.empty() ? 0.0 : err1_series.back().value; }
  double final_err2() const noexcept { return err2_series.empty() ? 0.0 : err2_series.back().value; }

  bool operator==(const RunResult&) const = default;
};

}  // namespace chebyclust
