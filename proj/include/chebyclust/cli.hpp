#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chebyclust/core.hpp"

namespace chebyclust::cli {

inline constexpr std::string_view kToolName = "chebyclust";
inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct RunOptions {
  std::filesystem::path image;
  double cp = 7.0;
  std::uint64_t seed = 0;
  double ridge = kDefaultRidge;
  std::filesystem::path out = ".";
};

struct SampleOptions {
  std::filesystem::path image;
  double cp = 7.0;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  double ridge = kDefaultRidge;
  std::filesystem::path out = ".";
  // 0 = OpenMP default.
  int threads = 0;
};

struct SweepOptions {
  std::filesystem::path image;
  std::vector<double> cp_list;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  double ridge = kDefaultRidge;
  std::filesystem::path out = ".";
  int threads = 0;
};

// Writes recon.ppm, err1.csv, err2.csv, summary.json.
int cmd_run(const RunOptions& opts, std::ostream& err);
// Writes runs.csv, kde_err1.csv, kde_err2.csv, kde_clusters.csv, modes.json,
// manifest.json.
int cmd_sample(const SampleOptions& opts, std::ostream& err);
// Writes sweep.csv, manifest.json.
int cmd_sweep(const SweepOptions& opts, std::ostream& err);

// "3,5,7.5" -> {3, 5, 7.5}. Throws InvalidInput on malformed or
// non-positive entries.
std::vector<double> parse_cp_list(std::string_view text);

// Fixed CSV number format: 9 significant digits.
std::string format_number(double v);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

}  // namespace chebyclust::cli
