#include "chebyclust/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "chebyclust/error.hpp"
#include "chebyclust/parallel.hpp"

namespace chebyclust {
namespace {

// Linear-interpolation quantile of sorted data (R type 7).
double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double kernel_sum(std::span<const double> samples, double inv_h, double x) {
  double s = 0.0;
  for (double v : samples) {
    const double u = (x - v) * inv_h;
    s += std::exp(-0.5 * u * u);
  }
  return s;
}

void check_samples(std::span<const double> samples) {
  if (samples.empty()) throw InvalidInput("kde needs at least one sample");
  for (double v : samples)
    if (!std::isfinite(v)) throw InvalidInput("kde samples must be finite");
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples) {
  check_samples(samples);
  const auto s = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= s;

  double sd = 0.0;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    sd = std::sqrt(ss / (s - 1.0));
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = (quantile(sorted, 0.75) - quantile(sorted, 0.25)) / 1.34;

  double spread;
  if (sd > 0.0 && iqr > 0.0)
    spread = std::min(sd, iqr);
  else
    spread = std::max(sd, iqr);
  if (spread > 0.0) return 0.9 * spread * std::pow(s, -0.2);
  return std::max(1e-9, 1e-3 * std::abs(mean));
}

std::vector<double> linear_grid(double lo, double hi, std::size_t size) {
  std::vector<double> g(size);
  const double step = (hi - lo) / static_cast<double>(size - 1);
  for (std::size_t k = 0; k < size; ++k) g[k] = lo + static_cast<double>(k) * step;
  g.back() = hi;
  return g;
}

void evaluate_kde_serial(std::span<const double> samples, double bandwidth,
                         std::span<const double> grid, std::span<double> out) {
  const double inv_h = 1.0 / bandwidth;
  const double norm =
      1.0 / (static_cast<double>(samples.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = norm * kernel_sum(samples, inv_h, grid[k]);
}

void evaluate_kde(std::span<const double> samples, double bandwidth,
                  std::span<const double> grid, std::span<double> out, int threads) {
  const double inv_h = 1.0 / bandwidth;
  const double norm =
      1.0 / (static_cast<double>(samples.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  const auto g = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::int64_t k = 0; k < g; ++k) out[k] = norm * kernel_sum(samples, inv_h, grid[k]);
}

DensityEstimate kde(std::span<const double> samples, std::size_t grid_size, int threads) {
  check_samples(samples);
  if (grid_size < kMinGridSize)
    throw InvalidInput("kde grid size must be at least " + std::to_string(kMinGridSize));

  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  DensityEstimate est;
  est.bandwidth = silverman_bandwidth(samples);
  const double pad = kGridPaddingBandwidths * est.bandwidth;
  est.grid = linear_grid(lo - pad, hi + pad, grid_size);
  est.density.resize(grid_size);
  evaluate_kde(samples, est.bandwidth, est.grid, est.density, threads);

  if (lo == hi) {
    est.mode = lo;
  } else {
    std::size_t best = 0;
    for (std::size_t k = 1; k < grid_size; ++k)
      if (est.density[k] > est.density[best]) best = k;
    est.mode = est.grid[best];
  }
  return est;
}

double trapezoid(std::span<const double> grid, std::span<const double> values) {
  double s = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k)
    s += 0.5 * (values[k] + values[k - 1]) * (grid[k] - grid[k - 1]);
  return s;
}

std::size_t histogram_mode(std::span<const std::size_t> counts) {
  if (counts.empty()) throw InvalidInput("histogram_mode needs at least one value");
  std::map<std::size_t, std::size_t> freq;
  for (std::size_t c : counts) ++freq[c];
  std::size_t best = freq.begin()->first;
  std::size_t best_n = 0;
  for (const auto& [value, n] : freq)
    if (n > best_n) {
      best = value;
      best_n = n;
    }
  return best;
}

ConvergedEstimates converged_estimates(std::span<const SampleSummary> summaries,
                                       std::size_t grid_size) {
  if (summaries.empty()) throw InvalidInput("converged_estimates needs at least one summary");
  std::vector<double> e1, e2, cc;
  std::vector<std::size_t> counts;
  for (const auto& s : summaries) {
    e1.push_back(s.final_err1);
    e2.push_back(s.final_err2);
    cc.push_back(static_cast<double>(s.cluster_count));
    counts.push_back(s.cluster_count);
  }
  ConvergedEstimates out;
  out.err1_density = kde(e1, grid_size);
  out.err2_density = kde(e2, grid_size);
  out.cluster_density = kde(cc, grid_size);
  out.err1 = out.err1_density.mode;
  out.err2 = out.err2_density.mode;
  out.cluster_count = std::round(out.cluster_density.mode);
  out.cluster_count_histogram = histogram_mode(counts);
  return out;
}

std::vector<SweepRow> sweep(const Dataset& data, std::span<const double> cp_list,
                            const LearnerConfig& base, std::size_t run_count,
                            std::uint64_t base_seed, int threads) {
  if (cp_list.empty()) throw InvalidInput("sweep needs at least one chebyshev parameter");
  for (double cp : cp_list)
    if (!(cp > 0.0) || !std::isfinite(cp))
      throw InvalidInput("sweep chebyshev parameters must be positive and finite");

  std::vector<SweepRow> rows;
  rows.reserve(cp_list.size());
  for (double cp : cp_list) {
    LearnerConfig config = base;
    config.chebyshev_param = cp;
    const auto summaries = sample_runs(data, config, run_count, base_seed, threads);
    const auto est = converged_estimates(summaries);
    rows.push_back({.chebyshev_param = cp,
                    .mode_cluster_count = est.cluster_count,
                    .mode_err1 = est.err1,
                    .mode_err2 = est.err2});
  }
  return rows;
}

}  // namespace chebyclust
