#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "chebyclust/core.hpp"

namespace chebyclust {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

// RGB raster, row-major.
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels;

  Image() = default;
  Image(std::size_t w, std::size_t h, Rgb fill = {});

  std::size_t size() const noexcept { return pixels.size(); }
  Rgb& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  const Rgb& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

  bool operator==(const Image&) const = default;
};

// Binary PPM (P6, maxval 255, '#' comments allowed in the header).
// Throws FormatError with the byte offset of the problem.
Image read_ppm(std::span<const std::uint8_t> bytes);
Image read_ppm_file(const std::filesystem::path& path);

// Canonical form: "P6\n<w> <h>\n255\n" followed by the raw payload.
std::vector<std::uint8_t> write_ppm(const Image& image);
void write_ppm_file(const Image& image, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

// One 3-D feature per pixel, channel / 255, row-major.
Dataset to_features(const Image& image);

struct Reconstruction {
  Image image;
  // Mean per-pixel L2 deviation on the 0-255 scale, before rounding.
  double trerr = 0.0;
  // Same deviations summed instead of averaged.
  double trerr_sum = 0.0;
  // trerr on the [0,1] feature scale.
  double trerr_unit = 0.0;
};

// Paints each pixel with round-half-up(255 * mean of its cluster).
// `cluster_means` are on the [0,1] scale. Throws ConsistencyError when the
// assignments do not match the image or reference a missing cluster.
Reconstruction reconstruct(const Image& image, std::span<const ClusterId> assignments,
                           std::span<const FeatureVector> cluster_means);
Reconstruction reconstruct(const Image& image, const RunResult& result);

// Per-cluster means of `data` under `assignments`.
std::vector<FeatureVector> partition_means(const Dataset& data,
                                           std::span<const ClusterId> assignments,
                                           std::size_t cluster_count);

}  // namespace chebyclust
