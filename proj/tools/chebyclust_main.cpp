// chebyclust: online Chebyshev-inequality clustering of PPM images.
//
//   chebyclust run    --cp 7 --seed 1 --out DIR image.ppm
//   chebyclust sample --cp 10 --runs 100 --seed 0 --out DIR image.ppm
//   chebyclust sweep  --cp-list 3,5,7,9 --runs 100 --out DIR image.ppm
//
// CHEBY_THREADS caps the number of worker threads (0 or unset = auto).

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "chebyclust/cli.hpp"
#include "chebyclust/error.hpp"
#include "chebyclust/parallel.hpp"

int main(int argc, char** argv) {
  using namespace chebyclust;

  CLI::App app{"Online clustering under a multivariate Chebyshev admission test"};
  app.set_version_flag("--version", std::string(cli::kToolVersion));
  app.require_subcommand(1);

  cli::RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Cluster one random sequence and reconstruct the image");
  run_cmd->add_option("image", run.image, "Input binary PPM (P6)")->required();
  run_cmd->add_option("--cp", run.cp, "Chebyshev parameter C_p")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Sequence seed")->capture_default_str();
  run_cmd->add_option("--ridge", run.ridge, "Covariance ridge on the [0,1] scale")->capture_default_str();
  run_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();

  cli::SampleOptions sample;
  auto* sample_cmd = app.add_subcommand("sample", "Run many random sequences and estimate densities");
  sample_cmd->add_option("image", sample.image, "Input binary PPM (P6)")->required();
  sample_cmd->add_option("--cp", sample.cp, "Chebyshev parameter C_p")->capture_default_str();
  sample_cmd->add_option("--runs", sample.runs, "Number of sequences")->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "Base seed")->capture_default_str();
  sample_cmd->add_option("--ridge", sample.ridge, "Covariance ridge on the [0,1] scale")->capture_default_str();
  sample_cmd->add_option("--out", sample.out, "Output directory")->capture_default_str();

  cli::SweepOptions sweep;
  std::string cp_list;
  auto* sweep_cmd = app.add_subcommand("sweep", "Density modes across a list of C_p values");
  sweep_cmd->add_option("image", sweep.image, "Input binary PPM (P6)")->required();
  sweep_cmd->add_option("--cp-list", cp_list, "Comma-separated C_p values")->required();
  sweep_cmd->add_option("--runs", sweep.runs, "Sequences per C_p")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Base seed")->capture_default_str();
  sweep_cmd->add_option("--ridge", sweep.ridge, "Covariance ridge on the [0,1] scale")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  int threads = 0;
  try {
    threads = threads_from_env();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }

  if (*run_cmd) return cli::cmd_run(run, std::cerr);
  if (*sample_cmd) {
    sample.threads = threads;
    return cli::cmd_sample(sample, std::cerr);
  }
  try {
    sweep.cp_list = cli::parse_cp_list(cp_list);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }
  sweep.threads = threads;
  return cli::cmd_sweep(sweep, std::cerr);
}
