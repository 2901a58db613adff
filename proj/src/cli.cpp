#include "chebyclust/cli.hpp"

#include <charconv>
#include <concepts>
#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "json.hpp"

#include "chebyclust/density.hpp"
#include "chebyclust/error.hpp"
#include "chebyclust/imageio.hpp"
#include "chebyclust/learner.hpp"
#include "chebyclust/random.hpp"
#include "chebyclust/sampler.hpp"

namespace chebyclust::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raised for bad command-line values; mapped to kExitUsage.
class UsageError : public Error {
 public:
  using Error::Error;
};

void require_positive_cp(double cp) {
  if (!(cp > 0.0) || !std::isfinite(cp)) throw UsageError("--cp must be a positive number");
}

void require_ridge(double ridge) {
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw UsageError("--ridge must be non-negative");
}

void require_runs(std::size_t runs) {
  if (runs == 0) throw UsageError("--runs must be at least 1");
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, std::string_view header) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot create " + path.string());
    out_ << header << '\n';
  }

  template <typename... Cells>
  void row(const Cells&... cells) {
    std::string line;
    ((line += cell(cells), line += ','), ...);
    line.back() = '\n';
    out_ << line;
  }

  void close() {
    out_.close();
    if (!out_) throw Error("failed writing " + path_.string());
  }

 private:
  static std::string cell(double v) { return format_number(v); }
  template <std::unsigned_integral T>
  static std::string cell(T v) {
    return std::to_string(v);
  }

  fs::path path_;
  std::ofstream out_;
};

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot create " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

void write_density(const fs::path& path, const DensityEstimate& est) {
  CsvWriter csv(path, "grid,density");
  for (std::size_t k = 0; k < est.grid.size(); ++k) csv.row(est.grid[k], est.density[k]);
  csv.close();
}

struct LoadedInput {
  Image image;
  Dataset data;
  std::string digest;
};

LoadedInput load(const fs::path& path) {
  const auto bytes = read_file_bytes(path);
  LoadedInput in;
  in.image = read_ppm(bytes);
  in.data = to_features(in.image);
  in.digest = sha256_hex(bytes);
  return in;
}

void prepare_out_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error("cannot create output directory " + out.string() + ": " + ec.message());
}

std::vector<std::string> warnings_for(const std::vector<double>& cps, std::ostream& err) {
  std::vector<std::string> warnings;
  for (double cp : cps) {
    LearnerConfig c;
    c.chebyshev_param = cp;
    if (c.vacuous_bound(3)) {
      std::string w = fmt::format(
          "C_p = {} <= N = 3: lower probability bound 1 - N/C_p = {} is vacuous", format_number(cp),
          format_number(lower_bound_confidence(c, 3)));
      err << "warning: " << w << '\n';
      warnings.push_back(std::move(w));
    }
  }
  return warnings;
}

json manifest(const fs::path& image, const std::string& digest, json config,
              std::vector<std::string> artifacts, std::vector<std::string> warnings) {
  return json{{"tool", kToolName},
              {"version", kToolVersion},
              {"generator", kGeneratorName},
              {"input", {{"path", image.string()}, {"sha256", digest}}},
              {"config", std::move(config)},
              {"artifacts", std::move(artifacts)},
              {"warnings", std::move(warnings)}};
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // fold -0
  return fmt::format("{:.9g}", v);
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::vector<double> parse_cp_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw InvalidInput("malformed C_p list entry '" + std::string(item) + "'");
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidInput("C_p list entries must be positive, got '" + std::string(item) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_run(const RunOptions& opts, std::ostream& err) {
  return guarded(err, [&] {
    require_positive_cp(opts.cp);
    require_ridge(opts.ridge);
    const auto in = load(opts.image);
    prepare_out_dir(opts.out);
    const auto warnings = warnings_for({opts.cp}, err);

    LearnerConfig config{.chebyshev_param = opts.cp, .ridge = opts.ridge, .seed = opts.seed};
    const auto order = permutation(in.data.size(), opts.seed);
    const RunResult result = run_sequence(in.data, order, config);
    const Reconstruction recon = reconstruct(in.image, result);

    write_ppm_file(recon.image, opts.out / "recon.ppm");
    {
      CsvWriter csv(opts.out / "err1.csv", "examples_processed,err1");
      for (const auto& p : result.err1_series) csv.row(p.x, p.value);
      csv.close();
    }
    {
      CsvWriter csv(opts.out / "err2.csv", "cluster_count,err2");
      for (const auto& p : result.err2_series) csv.row(p.x, p.value);
      csv.close();
    }

    const double m = static_cast<double>(in.data.size());
    json summary{
        {"chebyshev_param", opts.cp},
        {"cluster_count", result.cluster_count},
        {"trerr", result.total_reconstruction_error},
        {"tuple", {opts.cp, result.cluster_count, result.total_reconstruction_error}},
        {"trerr_sum", 255.0 * result.final_err_val},
        {"trerr_unit", result.final_err_val / m},
        {"lower_bound_confidence", result.lower_bound_confidence},
        {"vacuous_bound", result.vacuous_bound},
        {"final_err1", result.final_err1()},
        {"final_err2", result.final_err2()},
        {"cumulative_err_val", result.cumulative_err_val},
        {"err1_bound_diagnostic", result.err1_bound_diagnostic},
        {"examples", in.data.size()},
        {"manifest",
         manifest(opts.image, in.digest,
                  {{"chebyshev_param", opts.cp}, {"ridge", opts.ridge}, {"seed", opts.seed},
                   {"run_count", 1}},
                  {"recon.ppm", "err1.csv", "err2.csv", "summary.json"}, warnings)}};
    write_json(opts.out / "summary.json", summary);
  });
}

int cmd_sample(const SampleOptions& opts, std::ostream& err) {
  return guarded(err, [&] {
    require_positive_cp(opts.cp);
    require_ridge(opts.ridge);
    require_runs(opts.runs);
    const auto in = load(opts.image);
    prepare_out_dir(opts.out);
    const auto warnings = warnings_for({opts.cp}, err);

    LearnerConfig config{.chebyshev_param = opts.cp, .ridge = opts.ridge, .seed = opts.seed};
    const auto summaries = sample_runs(in.data, config, opts.runs, opts.seed, opts.threads);
    const auto est = converged_estimates(summaries);

    {
      CsvWriter csv(opts.out / "runs.csv", "seed,final_err1,final_err2,cluster_count,trerr");
      for (const auto& s : summaries)
        csv.row(s.seed, s.final_err1, s.final_err2, s.cluster_count, s.total_reconstruction_error);
      csv.close();
    }
    write_density(opts.out / "kde_err1.csv", est.err1_density);
    write_density(opts.out / "kde_err2.csv", est.err2_density);
    write_density(opts.out / "kde_clusters.csv", est.cluster_density);

    json modes{{"err1", est.err1},
               {"err2", est.err2},
               {"clusters", est.cluster_count},
               {"clusters_histogram", est.cluster_count_histogram},
               {"bandwidth",
                {{"err1", est.err1_density.bandwidth},
                 {"err2", est.err2_density.bandwidth},
                 {"clusters", est.cluster_density.bandwidth}}}};
    write_json(opts.out / "modes.json", modes);
    write_json(opts.out / "manifest.json",
               manifest(opts.image, in.digest,
                        {{"chebyshev_param", opts.cp}, {"ridge", opts.ridge},
                         {"seed", opts.seed}, {"run_count", opts.runs}},
                        {"runs.csv", "kde_err1.csv", "kde_err2.csv", "kde_clusters.csv",
                         "modes.json", "manifest.json"},
                        warnings));
  });
}

int cmd_sweep(const SweepOptions& opts, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.cp_list.empty()) throw UsageError("--cp-list must name at least one value");
    for (double cp : opts.cp_list) require_positive_cp(cp);
    require_ridge(opts.ridge);
    require_runs(opts.runs);
    const auto in = load(opts.image);
    prepare_out_dir(opts.out);
    const auto warnings = warnings_for(opts.cp_list, err);

    LearnerConfig base{.chebyshev_param = opts.cp_list.front(), .ridge = opts.ridge,
                       .seed = opts.seed};
    const auto rows = sweep(in.data, opts.cp_list, base, opts.runs, opts.seed, opts.threads);
    {
      CsvWriter csv(opts.out / "sweep.csv", "cp,mode_clusters,mode_err1,mode_err2");
      for (const auto& r : rows)
        csv.row(r.chebyshev_param, r.mode_cluster_count, r.mode_err1, r.mode_err2);
      csv.close();
    }
    write_json(opts.out / "manifest.json",
               manifest(opts.image, in.digest,
                        {{"cp_list", opts.cp_list}, {"ridge", opts.ridge}, {"seed", opts.seed},
                         {"run_count", opts.runs}},
                        {"sweep.csv", "manifest.json"}, warnings));
  });
}

}  // namespace chebyclust::cli
