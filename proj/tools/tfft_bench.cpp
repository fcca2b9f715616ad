// Experiment harness: tfft_bench <fft1d|fft2d|ablate|ladder|sweep> [options]
//
// Exit codes: 0 ok, 1 config or simulator error, 2 verification failure,
// 3 ladder ordering violated.

#include <cstdio>
#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "tfft/bench/bench.hpp"

namespace {

struct RawOptions {
  std::string flags = "YYYYY";
  std::string weights;
  std::string format = "json";
};

void add_common(CLI::App& sub, tfft::bench::ExperimentConfig& config, RawOptions& raw) {
  sub.add_option("--n", config.n, "transform length (power of two)");
  sub.add_option("--rows", config.rows, "2D rows");
  sub.add_option("--cols", config.cols, "2D columns");
  sub.add_option("--cores", config.num_cores, "simulated cores for 2D runs");
  sub.add_option("--variant", config.variant, "initial, chunked, thcon, wide128 or single_copy");
  sub.add_option("--flags", raw.flags, "ablation flags: external_read, read_reorder, compute, write_reorder, external_write");
  sub.add_option("--weights", raw.weights, "cost weight overrides, name=value,...");
  sub.add_option("--seed", config.seed, "input generator seed");
  sub.add_option("--format", raw.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--out", config.output_path, "report path (default stdout)");
  sub.add_option("--sizes", config.sizes, "sweep sizes")->delimiter(',');
  sub.add_option("--variants", config.variants, "sweep variants")->delimiter(',');
  sub.add_option("--core-counts", config.core_counts, "2D sweep core counts")->delimiter(',');
  sub.add_option("--input", config.input_path, "2D input array file");
  sub.add_option("--dump", config.dump_path, "write the 2D output array here");
  sub.add_option("--repeat", config.repeat, "runs to average the simulator's own wall time over");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tfft::bench;
  CLI::App app{"Simulated FFT kernels: reports, ablations and sweeps"};
  app.require_subcommand(1);
  ExperimentConfig config;
  RawOptions raw;
  const std::pair<const char*, const char*> commands[] = {
      {"fft1d", "one 1D kernel run"},
      {"fft2d", "distributed 2D transform over a core grid"},
      {"ablate", "cost of the seven mover/compute ablation rows"},
      {"ladder", "all five variants; exits 3 if costs are not strictly decreasing"},
      {"sweep", "cartesian product of sizes or core counts with variants"},
  };
  for (const auto& [name, help] : commands) add_common(*app.add_subcommand(name, help), config, raw);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    config.command = parse_command(app.get_subcommands().front()->get_name());
    config.flags = tfft::kernels::AblationFlags::parse(raw.flags);
    config.weights = parse_weights(raw.weights);
    config.format = raw.format == "csv" ? Format::csv : Format::json;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  const CommandOutcome outcome = run_command(config);
  if (config.output_path.empty()) std::cout << outcome.report;
  if (!outcome.message.empty()) std::cerr << (outcome.exit_code == kExitError ? "error: " : "") << outcome.message << '\n';
  if (config.repeat > 1 && outcome.exit_code != kExitError) {
    std::fprintf(stderr, "simulator wall time: %.3f ms per run over %u runs\n", outcome.seconds_per_run * 1e3,
                 config.repeat);
  }
  return outcome.exit_code;
}
