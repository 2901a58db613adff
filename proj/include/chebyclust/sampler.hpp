#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chebyclust/core.hpp"

namespace chebyclust {

struct SampleSummary {
  std::uint64_t seed = 0;
  double final_err1 = 0.0;
  double final_err2 = 0.0;
  std::size_t cluster_count = 0;
  double total_reconstruction_error = 0.0;

  bool operator==(const SampleSummary&) const = default;
};

// Uniform random ordering of 0..m-1: Fisher-Yates driven by mt19937_64
// seeded with `seed`. Identical (m, seed) gives the identical ordering on
// every platform.
std::vector<ExampleIndex> permutation(std::size_t m, std::uint64_t seed);

SampleSummary summarize(std::uint64_t seed, const RunResult& result);

// One run per seed base_seed, base_seed + 1, ..., in that order. Each run
// uses permutation(M, seed) and config.seed = seed. Errors are rethrown
// as RunError carrying the lowest failing seed.
//
// Runs execute on an OpenMP team of resolve_threads(threads) threads;
// output is independent of the thread count.
std::vector<SampleSummary> sample_runs(const Dataset& data, const LearnerConfig& config,
                                       std::size_t run_count, std::uint64_t base_seed,
                                       int threads = 0);

// Single-threaded reference for sample_runs.
std::vector<SampleSummary> sample_runs_serial(const Dataset& data, const LearnerConfig& config,
                                              std::size_t run_count, std::uint64_t base_seed);

}  // namespace chebyclust
