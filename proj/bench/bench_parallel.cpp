// Serial vs OpenMP timings for the two data-parallel kernels: independent
// runs over seeds, and KDE evaluation over grid points.
//
//   chebyclust_bench [image.ppm] [runs] [cp]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "chebyclust/density.hpp"
#include "chebyclust/imageio.hpp"
#include "chebyclust/parallel.hpp"
#include "chebyclust/sampler.hpp"

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

chebyclust::Image synthetic_image(std::size_t side) {
  chebyclust::Image img(side, side);
  std::mt19937_64 rng(42);
  for (std::size_t y = 0; y < side; ++y)
    for (std::size_t x = 0; x < side; ++x) {
      const auto base = static_cast<int>((x * 4 / side) * 60 + (y * 4 / side) * 10);
      const auto jitter = static_cast<int>(rng() % 7);
      const auto v = static_cast<std::uint8_t>(base + jitter);
      img.at(x, y) = {v, static_cast<std::uint8_t>(255 - v), static_cast<std::uint8_t>(v / 2)};
    }
  return img;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace chebyclust;
  const Image img = argc > 1 ? read_ppm_file(argv[1]) : synthetic_image(48);
  const std::size_t runs = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 16;
  LearnerConfig config;
  config.chebyshev_param = argc > 3 ? std::strtod(argv[3], nullptr) : 7.0;
  const Dataset data = to_features(img);
  const int threads = resolve_threads(threads_from_env());

  std::vector<SampleSummary> serial, parallel;
  const double t_serial = seconds([&] { serial = sample_runs_serial(data, config, runs, 0); });
  const double t_parallel = seconds([&] { parallel = sample_runs(data, config, runs, 0, threads); });
  std::printf("sample_runs  M=%zu runs=%zu  serial %.3fs  omp(%d) %.3fs  speedup %.2fx  %s\n",
              data.size(), runs, t_serial, threads, t_parallel, t_serial / t_parallel,
              serial == parallel ? "identical" : "MISMATCH");

  std::normal_distribution<double> normal(0.0, 1.0);
  std::mt19937_64 rng(7);
  std::vector<double> samples(20000);
  for (double& v : samples) v = normal(rng);
  const double h = silverman_bandwidth(samples);
  const auto grid = linear_grid(-5.0, 5.0, 4096);
  std::vector<double> a(grid.size()), b(grid.size());
  const double k_serial = seconds([&] { evaluate_kde_serial(samples, h, grid, a); });
  const double k_parallel = seconds([&] { evaluate_kde(samples, h, grid, b, threads); });
  std::printf("kde          S=%zu G=%zu        serial %.3fs  omp(%d) %.3fs  speedup %.2fx  %s\n",
              samples.size(), grid.size(), k_serial, threads, k_parallel, k_serial / k_parallel,
              a == b ? "identical" : "MISMATCH");
  return serial == parallel && a == b ? EXIT_SUCCESS : EXIT_FAILURE;
}
