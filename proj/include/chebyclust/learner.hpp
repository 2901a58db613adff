#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chebyclust/chebyshev.hpp"
#include "chebyclust/core.hpp"
#include "chebyclust/random.hpp"

namespace chebyclust {

// One placement decision, kept so admission and founding invariants can be
// replayed after a run.
struct PlacementRecord {
  ExampleIndex example = 0;
  ClusterId cluster = 0;
  // Depth against `cluster` at admission time; unset for founding events.
  std::optional<double> depth;
  // NN partner for founding events; unset for admissions and singletons.
  std::optional<ExampleIndex> partner;
  bool founded = false;
};

// Online transductive-inductive learner over a fixed example set.
//
// Each processed example is either admitted to the qualifying cluster of
// lowest depth (depth < C_p) or, when no cluster qualifies, founds a new
// cluster together with its nearest unprocessed neighbour. Err1 is
// sampled after every placement and Err2 after every founding.
class Learner {
 public:
  Learner(const Dataset& data, const LearnerConfig& config);

  // Lowest-depth qualifying cluster, ties (within a relative 1e-10) to the
  // lower id. Propagates SingularCovariance when a cluster's regularized
  // covariance is singular.
  std::optional<ClusterId> select_cluster(std::span<const double> x) const;

  // Depth of `x` against every cluster, in id order.
  std::vector<DeviationResult> deviations(std::span<const double> x) const;

  // Unprocessed example closest to `x` in Euclidean distance, ties to the
  // lower index under the same tie band; nullopt when nothing remains.
  std::optional<ExampleIndex> nearest_unprocessed(std::span<const double> x) const;

  // Throws InvalidInput if `i` is out of range or already processed.
  void process_example(ExampleIndex i);

  // Sum over clusters of sum over members of ||x - mean||_2, recomputed
  // from scratch.
  double compute_err_val() const;
  // Same quantity from the per-cluster cache maintained during updates.
  double err_val() const noexcept;

  bool is_unprocessed(ExampleIndex i) const { return unprocessed_pos_[i] != kProcessed; }
  std::size_t unprocessed_count() const noexcept { return unprocessed_.size(); }
  std::size_t processed_count() const noexcept { return processed_; }
  bool done() const noexcept { return unprocessed_.empty(); }

  const std::vector<Cluster>& clusters() const noexcept { return clusters_; }
  const std::vector<SeriesPoint>& err1_series() const noexcept { return err1_; }
  const std::vector<SeriesPoint>& err2_series() const noexcept { return err2_; }
  const std::vector<PlacementRecord>& placements() const noexcept { return placements_; }
  const LearnerConfig& config() const noexcept { return config_; }

  // Assembles the RunResult. Requires every example to be processed.
  RunResult result() const;

 private:
  static constexpr std::size_t kProcessed = static_cast<std::size_t>(-1);

  void mark_processed(ExampleIndex i);
  void refresh(ClusterId q);
  void found_cluster(ExampleIndex i);

  const Dataset* data_;
  LearnerConfig config_;
  std::vector<Cluster> clusters_;
  std::vector<std::optional<CovarianceFactor>> factors_;
  std::vector<std::string> factor_errors_;
  std::vector<double> cluster_error_;

  std::vector<ExampleIndex> unprocessed_;
  std::vector<std::size_t> unprocessed_pos_;
  std::size_t processed_ = 0;

  std::vector<SeriesPoint> err1_;
  std::vector<SeriesPoint> err2_;
  std::vector<PlacementRecord> placements_;
  double cumulative_err_val_ = 0.0;
  Rng noise_rng_;
};

// Runs the learner over `data` in `permutation` order, skipping examples
// already consumed as founding partners. Deterministic. Throws InvalidInput
// when M < 2 or `permutation` is not a bijection on 0..M-1.
RunResult run_sequence(const Dataset& data, std::span<const ExampleIndex> permutation,
                       const LearnerConfig& config);

}  // namespace chebyclust
