#include "chebyclust/learner.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "chebyclust/error.hpp"

namespace chebyclust {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

// Relative band within which two distances or depths count as tied. Ties
// that are exact in the data's native units (e.g. integer pixel levels)
// can differ by an ulp after rescaling; lumping them keeps tie-breaking
// independent of the feature scale.
constexpr double kTieTolerance = 1e-10;

bool within_tie(double v, double best) { return v <= best + kTieTolerance * best; }

double cluster_deviation(const Dataset& data, const Cluster& c) {
  double s = 0.0;
  for (ExampleIndex i : c.members) s += std::sqrt(squared_distance(data.row(i), c.mean));
  return s;
}

}  // namespace

Learner::Learner(const Dataset& data, const LearnerConfig& config)
    : data_(&data), config_(config), noise_rng_(config.seed) {
  config_.validate();
  const std::size_t m = data.size();
  unprocessed_.resize(m);
  std::iota(unprocessed_.begin(), unprocessed_.end(), ExampleIndex{0});
  unprocessed_pos_.resize(m);
  std::iota(unprocessed_pos_.begin(), unprocessed_pos_.end(), std::size_t{0});
}

std::vector<DeviationResult> Learner::deviations(std::span<const double> x) const {
  if (x.size() != data_->dims())
    throw InvalidInput("feature dimension " + std::to_string(x.size()) +
                       " does not match dataset dimension " + std::to_string(data_->dims()));
  std::vector<DeviationResult> out;
  out.reserve(clusters_.size());
  for (ClusterId q = 0; q < clusters_.size(); ++q) {
    if (!factors_[q]) throw SingularCovariance(factor_errors_[q]);
    out.push_back(evaluate_deviation(x, clusters_[q], *factors_[q], config_));
  }
  return out;
}

std::optional<ClusterId> Learner::select_cluster(std::span<const double> x) const {
  if (x.size() != data_->dims())
    throw InvalidInput("feature dimension " + std::to_string(x.size()) +
                       " does not match dataset dimension " + std::to_string(data_->dims()));
  std::vector<double> depth(clusters_.size(), std::numeric_limits<double>::infinity());
  double best_depth = std::numeric_limits<double>::infinity();
  for (ClusterId q = 0; q < clusters_.size(); ++q) {
    if (!factors_[q]) throw SingularCovariance(factor_errors_[q]);
    const DeviationResult r = evaluate_deviation(x, clusters_[q], *factors_[q], config_);
    if (r.admitted) {
      depth[q] = r.depth;
      best_depth = std::min(best_depth, r.depth);
    }
  }
  if (!std::isfinite(best_depth)) return std::nullopt;
  for (ClusterId q = 0; q < clusters_.size(); ++q)
    if (within_tie(depth[q], best_depth)) return q;
  return std::nullopt;
}

std::optional<ExampleIndex> Learner::nearest_unprocessed(std::span<const double> x) const {
  if (unprocessed_.empty()) return std::nullopt;
  double best_dist = std::numeric_limits<double>::infinity();
  for (ExampleIndex j : unprocessed_) best_dist = std::min(best_dist, squared_distance(x, data_->row(j)));
  std::optional<ExampleIndex> best;
  for (ExampleIndex j : unprocessed_)
    if ((!best || j < *best) && within_tie(squared_distance(x, data_->row(j)), best_dist)) best = j;
  return best;
}

void Learner::mark_processed(ExampleIndex i) {
  const std::size_t pos = unprocessed_pos_[i];
  const ExampleIndex last = unprocessed_.back();
  unprocessed_[pos] = last;
  unprocessed_pos_[last] = pos;
  unprocessed_.pop_back();
  unprocessed_pos_[i] = kProcessed;
  ++processed_;
}

void Learner::refresh(ClusterId q) {
  cluster_error_[q] = cluster_deviation(*data_, clusters_[q]);
  try {
    factors_[q] = CovarianceFactor::of(clusters_[q], config_.ridge);
    factor_errors_[q].clear();
  } catch (const SingularCovariance& e) {
    factors_[q].reset();
    factor_errors_[q] = e.what();
  }
}

void Learner::found_cluster(ExampleIndex i) {
  const ClusterId q = clusters_.size();
  const auto x = data_->row(i);
  Cluster c = Cluster::singleton(q, i, x);
  PlacementRecord rec{.example = i, .cluster = q, .depth = std::nullopt,
                      .partner = std::nullopt, .founded = true};
  if (const auto j = nearest_unprocessed(x)) {
    mark_processed(*j);
    c.add(*j, data_->row(*j));
    rec.partner = *j;
  }
  clusters_.push_back(std::move(c));
  factors_.emplace_back();
  factor_errors_.emplace_back();
  cluster_error_.push_back(0.0);
  refresh(q);
  placements_.push_back(rec);
  err2_.push_back({clusters_.size(), err_val() / static_cast<double>(processed_)});
}

void Learner::process_example(ExampleIndex i) {
  if (i >= data_->size()) throw InvalidInput("example index " + std::to_string(i) + " out of range");
  if (!is_unprocessed(i))
    throw InvalidInput("example " + std::to_string(i) + " was already processed");

  const auto x = data_->row(i);
  std::optional<ClusterId> target;
  std::optional<double> depth;
  if (config_.noisy_association) {
    std::vector<DeviationResult> qualifying;
    for (const auto& r : deviations(x))
      if (r.admitted) qualifying.push_back(r);
    if (!qualifying.empty()) {
      const auto& pick = qualifying[uniform_below(noise_rng_, qualifying.size())];
      target = pick.cluster_id;
      depth = pick.depth;
    }
  } else {
    target = select_cluster(x);
    if (target) depth = factors_[*target]->depth(x, clusters_[*target].mean);
  }

  mark_processed(i);
  if (target) {
    clusters_[*target].add(i, x);
    refresh(*target);
    placements_.push_back({.example = i, .cluster = *target, .depth = depth,
                           .partner = std::nullopt, .founded = false});
  } else {
    found_cluster(i);
  }

  const double ev = err_val();
  cumulative_err_val_ += ev;
  err1_.push_back({processed_, ev / static_cast<double>(processed_)});
}

double Learner::err_val() const noexcept {
  double s = 0.0;
  for (double e : cluster_error_) s += e;
  return s;
}

double Learner::compute_err_val() const {
  double s = 0.0;
  for (const auto& c : clusters_) s += cluster_deviation(*data_, c);
  return s;
}

RunResult Learner::result() const {
  if (!done()) throw ConsistencyError("run result requested before all examples were processed");
  const std::size_t m = data_->size();
  RunResult r;
  r.assignments.assign(m, 0);
  for (const auto& c : clusters_)
    for (ExampleIndex i : c.members) r.assignments[i] = c.id;
  r.err1_series = err1_;
  r.err2_series = err2_;
  r.cluster_count = clusters_.size();
  r.final_err_val = err_val();
  r.cumulative_err_val = cumulative_err_val_;
  r.total_reconstruction_error = 255.0 * r.final_err_val / static_cast<double>(m);
  r.lower_bound_confidence = lower_bound_confidence(config_, data_->dims());
  r.vacuous_bound = config_.vacuous_bound(data_->dims());

  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& f : factors_)
    if (f) lowest = std::min(lowest, f->determinant());
  r.err1_bound_diagnostic = std::isfinite(lowest) ? config_.chebyshev_param * lowest : 0.0;

  r.clusters = clusters_;
  return r;
}

RunResult run_sequence(const Dataset& data, std::span<const ExampleIndex> permutation,
                       const LearnerConfig& config) {
  const std::size_t m = data.size();
  if (m < 2) throw InvalidInput("run_sequence needs at least 2 examples, got " + std::to_string(m));
  if (permutation.size() != m)
    throw InvalidInput("permutation length " + std::to_string(permutation.size()) +
                       " does not match example count " + std::to_string(m));
  std::vector<char> seen(m, 0);
  for (ExampleIndex i : permutation) {
    if (i >= m || seen[i]) throw InvalidInput("ordering is not a permutation of 0..M-1");
    seen[i] = 1;
  }

  Learner learner(data, config);
  for (ExampleIndex i : permutation)
    if (learner.is_unprocessed(i)) learner.process_example(i);
  return learner.result();
}

}  // namespace chebyclust
