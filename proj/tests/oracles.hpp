#pragma once

// Independent reference computations and fixtures for the test suites.
// Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "chebyclust/core.hpp"
#include "chebyclust/imageio.hpp"

namespace oracle {

using chebyclust::Dataset;
using chebyclust::FeatureVector;
using chebyclust::Image;
using chebyclust::Rgb;

struct BatchStats {
  FeatureVector mean;
  std::vector<double> scatter;  // row-major N x N
};

// Two-pass mean and scatter.
inline BatchStats batch_stats(const std::vector<FeatureVector>& rows) {
  const std::size_t n = rows.front().size();
  BatchStats s{FeatureVector(n, 0.0), std::vector<double>(n * n, 0.0)};
  for (const auto& r : rows)
    for (std::size_t k = 0; k < n; ++k) s.mean[k] += r[k];
  for (double& m : s.mean) m /= static_cast<double>(rows.size());
  for (const auto& r : rows)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) s.scatter[a * n + b] += (r[a] - s.mean[a]) * (r[b] - s.mean[b]);
  return s;
}

// |got - want| <= rel * (|want| + scale), scale guarding entries near zero.
inline bool close(double got, double want, double rel, double scale = 0.0) {
  return std::abs(got - want) <= rel * (std::abs(want) + scale);
}

inline std::size_t brute_nearest(const Dataset& data, std::span<const double> x,
                                 const std::vector<std::size_t>& candidates) {
  std::size_t best = candidates.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j : candidates) {
    double d = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) d += (x[k] - data.row(j)[k]) * (x[k] - data.row(j)[k]);
    if (d < best_d || (d == best_d && j < best)) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

// Sum of L2 deviations from per-cluster batch means, from assignments only.
inline double batch_err_val(const Dataset& data, std::span<const std::size_t> assignments) {
  std::map<std::size_t, std::vector<FeatureVector>> groups;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const auto r = data.row(i);
    groups[assignments[i]].emplace_back(r.begin(), r.end());
  }
  double total = 0.0;
  for (const auto& [q, rows] : groups) {
    const auto s = batch_stats(rows);
    for (const auto& r : rows) {
      double d = 0.0;
      for (std::size_t k = 0; k < r.size(); ++k) d += (r[k] - s.mean[k]) * (r[k] - s.mean[k]);
      total += std::sqrt(d);
    }
  }
  return total;
}

// Naive double-loop Gaussian KDE.
inline std::vector<double> direct_kde(const std::vector<double>& samples, double h,
                                      const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double s = 0.0;
    for (double v : samples) {
      const double u = (grid[g] - v) / h;
      s += std::exp(-0.5 * u * u);
    }
    out[g] = s / (static_cast<double>(samples.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  }
  return out;
}

inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

// Spearman rank correlation (Pearson on average ranks).
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline Image constant_image(std::size_t w, std::size_t h, Rgb c = {90, 140, 200}) {
  return Image(w, h, c);
}

// Pixels drawn from `colors` (8-bit centers), each channel jittered by an
// integer uniformly in [-jitter, jitter]. Colors tile the image in
// vertical bands so every color is present.
inline Image planted_image(std::size_t side, const std::vector<Rgb>& colors, int jitter,
                           std::uint64_t seed) {
  Image img(side, side);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> j(-jitter, jitter);
  for (std::size_t y = 0; y < side; ++y)
    for (std::size_t x = 0; x < side; ++x) {
      const Rgb c = colors[x * colors.size() / side];
      auto ch = [&](std::uint8_t v) { return static_cast<std::uint8_t>(std::clamp(v + j(rng), 0, 255)); };
      img.at(x, y) = {ch(c.r), ch(c.g), ch(c.b)};
    }
  return img;
}

// Four well separated colors at alternate corners of the RGB cube
// (pairwise L2 distance 0.8 * sqrt(2) on the [0,1] scale).
inline const std::vector<Rgb>& four_colors() {
  static const std::vector<Rgb> c{{26, 26, 26}, {230, 230, 26}, {230, 26, 230}, {26, 230, 230}};
  return c;
}

inline Image random_image(std::size_t side, std::uint64_t seed) {
  Image img(side, side);
  std::mt19937_64 rng(seed);
  for (auto& px : img.pixels)
    px = {static_cast<std::uint8_t>(rng() & 0xff), static_cast<std::uint8_t>(rng() & 0xff),
          static_cast<std::uint8_t>(rng() & 0xff)};
  return img;
}

}  // namespace oracle
