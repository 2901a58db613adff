#include "chebyclust/imageio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "chebyclust/error.hpp"

namespace chebyclust {
namespace {

class HeaderReader {
 public:
  HeaderReader(std::span<const std::uint8_t> bytes, std::size_t start) : bytes_(bytes), pos_(start) {}

  std::size_t offset() const noexcept { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t read_uint(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (std::size_t{1} << 31)) throw FormatError(std::string(what) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= bytes_.size()) throw FormatError(std::string("truncated header before ") + what, pos_);
      throw FormatError(std::string("expected ") + what, pos_);
    }
    return value;
  }

  void expect_single_whitespace() {
    if (pos_ >= bytes_.size()) throw FormatError("truncated header after maxval", pos_);
    if (!std::isspace(bytes_[pos_])) throw FormatError("expected whitespace after maxval", pos_);
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
};

}  // namespace

Image::Image(std::size_t w, std::size_t h, Rgb fill) : width(w), height(h), pixels(w * h, fill) {}

Image read_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw FormatError("truncated PPM magic", bytes.size());
  if (bytes[0] != 'P' || bytes[1] != '6') throw FormatError("not a binary PPM (expected P6)", 0);

  HeaderReader header(bytes, 2);
  const std::size_t width = header.read_uint("width");
  const std::size_t height = header.read_uint("height");
  const std::size_t maxval_at = header.offset();
  const std::size_t maxval = header.read_uint("maxval");
  if (maxval != 255) throw FormatError("unsupported maxval " + std::to_string(maxval), maxval_at);
  header.expect_single_whitespace();
  if (width == 0 || height == 0) throw FormatError("image has zero width or height", 2);

  const std::size_t data_start = header.offset();
  const std::size_t need = width * height * 3;
  const std::size_t have = bytes.size() - data_start;
  if (have < need)
    throw FormatError("truncated payload: need " + std::to_string(need) + " bytes, have " +
                          std::to_string(have),
                      bytes.size());

  Image img(width, height);
  const auto* p = bytes.data() + data_start;
  for (auto& px : img.pixels) {
    px = {p[0], p[1], p[2]};
    p += 3;
  }
  return img;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Image read_ppm_file(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return read_ppm(bytes);
}

std::vector<std::uint8_t> write_ppm(const Image& image) {
  const std::string header =
      "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + image.pixels.size() * 3);
  for (const auto& px : image.pixels) {
    out.push_back(px.r);
    out.push_back(px.g);
    out.push_back(px.b);
  }
  return out;
}

void write_ppm_file(const Image& image, const std::filesystem::path& path) {
  const auto bytes = write_ppm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

Dataset to_features(const Image& image) {
  std::vector<double> v;
  v.reserve(image.pixels.size() * 3);
  for (const auto& px : image.pixels) {
    v.push_back(px.r / 255.0);
    v.push_back(px.g / 255.0);
    v.push_back(px.b / 255.0);
  }
  return Dataset(3, std::move(v));
}

Reconstruction reconstruct(const Image& image, std::span<const ClusterId> assignments,
                           std::span<const FeatureVector> cluster_means) {
  if (assignments.size() != image.size())
    throw ConsistencyError("assignment count " + std::to_string(assignments.size()) +
                           " does not match pixel count " + std::to_string(image.size()));
  for (const auto& m : cluster_means)
    if (m.size() != 3) throw ConsistencyError("cluster means must be 3-dimensional");

  std::vector<Rgb> painted(cluster_means.size());
  for (std::size_t q = 0; q < cluster_means.size(); ++q) {
    auto channel = [](double v) {
      const double scaled = std::floor(v * 255.0 + 0.5);
      return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
    };
    painted[q] = {channel(cluster_means[q][0]), channel(cluster_means[q][1]),
                  channel(cluster_means[q][2])};
  }

  Reconstruction out;
  out.image = Image(image.width, image.height);
  double sum = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    const ClusterId q = assignments[i];
    if (q >= cluster_means.size())
      throw ConsistencyError("pixel " + std::to_string(i) + " assigned to missing cluster " +
                             std::to_string(q));
    out.image.pixels[i] = painted[q];
    const auto& px = image.pixels[i];
    const double dr = px.r - 255.0 * cluster_means[q][0];
    const double dg = px.g - 255.0 * cluster_means[q][1];
    const double db = px.b - 255.0 * cluster_means[q][2];
    sum += std::sqrt(dr * dr + dg * dg + db * db);
  }
  out.trerr_sum = sum;
  out.trerr = sum / static_cast<double>(image.size());
  out.trerr_unit = out.trerr / 255.0;
  return out;
}

Reconstruction reconstruct(const Image& image, const RunResult& result) {
  std::vector<FeatureVector> means(result.clusters.size());
  for (const auto& c : result.clusters) {
    if (c.id >= means.size()) throw ConsistencyError("cluster ids are not dense");
    means[c.id] = c.mean;
  }
  return reconstruct(image, result.assignments, means);
}

std::vector<FeatureVector> partition_means(const Dataset& data,
                                           std::span<const ClusterId> assignments,
                                           std::size_t cluster_count) {
  if (assignments.size() != data.size())
    throw ConsistencyError("assignment count does not match example count");
  std::vector<FeatureVector> sums(cluster_count, FeatureVector(data.dims(), 0.0));
  std::vector<std::size_t> counts(cluster_count, 0);
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const ClusterId q = assignments[i];
    if (q >= cluster_count) throw ConsistencyError("assignment references a missing cluster");
    const auto x = data.row(i);
    for (std::size_t k = 0; k < x.size(); ++k) sums[q][k] += x[k];
    ++counts[q];
  }
  for (std::size_t q = 0; q < cluster_count; ++q)
    if (counts[q] > 0)
      for (double& v : sums[q]) v /= static_cast<double>(counts[q]);
  return sums;
}

}  // namespace chebyclust
