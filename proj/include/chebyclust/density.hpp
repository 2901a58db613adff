#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chebyclust/core.hpp"
#include "chebyclust/sampler.hpp"

namespace chebyclust {

inline constexpr std::size_t kDefaultGridSize = 512;
inline constexpr std::size_t kMinGridSize = 16;
// The grid extends this many bandwidths beyond the sample range.
inline constexpr double kGridPaddingBandwidths = 4.0;

struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
  double mode = 0.0;
};

// Silverman's rule 0.9 * min(sd, IQR / 1.34) * S^(-1/5). When one spread
// measure is zero the other is used; when both are zero the samples are
// degenerate and max(1e-9, 1e-3 * |mean|) is returned.
double silverman_bandwidth(std::span<const double> samples);

// `size` evenly spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t size);

// Gaussian KDE at every grid point, OpenMP-parallel over grid points.
// Each point sums samples in input order, so the result matches the
// serial kernel bit for bit.
void evaluate_kde(std::span<const double> samples, double bandwidth,
                  std::span<const double> grid, std::span<double> out, int threads = 0);
void evaluate_kde_serial(std::span<const double> samples, double bandwidth,
                         std::span<const double> grid, std::span<double> out);

// Gaussian KDE over [min - 4h, max + 4h]. Mode is the grid argmax (lowest
// abscissa on ties), or the common value for degenerate samples.
// Throws InvalidInput on empty or non-finite samples or grid_size < 16.
DensityEstimate kde(std::span<const double> samples, std::size_t grid_size = kDefaultGridSize,
                    int threads = 0);

double trapezoid(std::span<const double> grid, std::span<const double> values);

// Most frequent value, ties to the smallest.
std::size_t histogram_mode(std::span<const std::size_t> counts);

struct ConvergedEstimates {
  double err1 = 0.0;
  double err2 = 0.0;
  // KDE mode rounded to the nearest integer.
  double cluster_count = 0.0;
  std::size_t cluster_count_histogram = 0;
  DensityEstimate err1_density;
  DensityEstimate err2_density;
  DensityEstimate cluster_density;
};

ConvergedEstimates converged_estimates(std::span<const SampleSummary> summaries,
                                       std::size_t grid_size = kDefaultGridSize);

struct SweepRow {
  double chebyshev_param = 0.0;
  double mode_cluster_count = 0.0;
  double mode_err1 = 0.0;
  double mode_err2 = 0.0;
};

// One row per entry of `cp_list`, in order; `base` supplies the ridge.
std::vector<SweepRow> sweep(const Dataset& data, std::span<const double> cp_list,
                            const LearnerConfig& base, std::size_t run_count,
                            std::uint64_t base_seed, int threads = 0);

}  // namespace chebyclust
