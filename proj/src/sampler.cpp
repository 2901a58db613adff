#include "chebyclust/sampler.hpp"

#include <exception>
#include <numeric>
#include <optional>

#include "chebyclust/error.hpp"
#include "chebyclust/learner.hpp"
#include "chebyclust/parallel.hpp"
#include "chebyclust/random.hpp"

namespace chebyclust {
namespace {

SampleSummary run_one(const Dataset& data, LearnerConfig config, std::uint64_t seed) {
  config.seed = seed;
  const auto order = permutation(data.size(), seed);
  return summarize(seed, run_sequence(data, order, config));
}

void check_run_count(std::size_t run_count) {
  if (run_count == 0) throw InvalidInput("run_count must be at least 1");
}

}  // namespace

std::vector<ExampleIndex> permutation(std::size_t m, std::uint64_t seed) {
  if (m == 0) throw InvalidInput("permutation size must be at least 1");
  std::vector<ExampleIndex> order(m);
  std::iota(order.begin(), order.end(), ExampleIndex{0});
  Rng rng(seed);
  for (std::size_t i = m - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

SampleSummary summarize(std::uint64_t seed, const RunResult& result) {
  return {.seed = seed,
          .final_err1 = result.final_err1(),
          .final_err2 = result.final_err2(),
          .cluster_count = result.cluster_count,
          .total_reconstruction_error = result.total_reconstruction_error};
}

std::vector<SampleSummary> sample_runs_serial(const Dataset& data, const LearnerConfig& config,
                                              std::size_t run_count, std::uint64_t base_seed) {
  check_run_count(run_count);
  config.validate();
  std::vector<SampleSummary> out;
  out.reserve(run_count);
  for (std::size_t k = 0; k < run_count; ++k) {
    const std::uint64_t seed = base_seed + k;
    try {
      out.push_back(run_one(data, config, seed));
    } catch (const std::exception& e) {
      throw RunError(seed, e.what());
    }
  }
  return out;
}

std::vector<SampleSummary> sample_runs(const Dataset& data, const LearnerConfig& config,
                                       std::size_t run_count, std::uint64_t base_seed,
                                       int threads) {
  check_run_count(run_count);
  config.validate();
  std::vector<SampleSummary> out(run_count);
  std::vector<std::optional<std::string>> failures(run_count);
  const auto n = static_cast<std::int64_t>(run_count);

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (std::int64_t k = 0; k < n; ++k) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(k);
    try {
      out[k] = run_one(data, config, seed);
    } catch (const std::exception& e) {
      failures[k] = e.what();
    }
  }

  for (std::size_t k = 0; k < run_count; ++k)
    if (failures[k]) throw RunError(base_seed + k, *failures[k]);
  return out;
}

}  // namespace chebyclust
