#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <optional>
#include <stdexcept>
#include <thread>

#include "tfft/bench/bench.hpp"
#include "tfft/error.hpp"
#include "tfft/fft2d/fft2d.hpp"
#include "tfft/kernels/fft_kernel.hpp"

namespace tfft::bench {

namespace {

using json = nlohmann::ordered_json;
using kernels::AblationFlags;
using kernels::KernelVariant;

// Published hardware figures, carried as reference columns only.
constexpr double kLadderReferenceMs[] = {14.39, 9.38, 7.56, 6.61, 5.31};

struct AblationReference {
  const char* flags;
  double reference_ms;
};
constexpr AblationReference kAblationReferenceMs[] = {
    {"YYYYY", 14.4}, {"YNYYY", 7.3}, {"NNYYY", 7.3}, {"NYYNN", 10.5},
    {"YYYNN", 10.6}, {"NNYNY", 0.9}, {"NNYNN", 0.9},
};

json fft2d_reference() {
  json r;
  r["reference_ms"] = 23.56;
  r["reference_watts"] = 42;
  r["reference_joules"] = 0.99;
  r["cpu_ms"] = 10.24;
  r["cpu_watts"] = 353;
  r["cpu_joules"] = 3.62;
  return r;
}

struct Body {
  json document;
  std::vector<json> records;  // CSV rows
  int exit_code = kExitOk;
  std::string message;
};

void merge(json& into, const json& from) {
  for (const auto& [key, value] : from.items()) into[key] = value;
}

bool acceptable(double err) { return std::isfinite(err) && err <= kVerifyTolerance; }

const KernelVariant& chosen_variant(const ExperimentConfig& config, const char* fallback) {
  return kernels::variant_by_name(config.variant.empty() ? fallback : config.variant);
}

// Kernel run plus oracle check; the DFT oracle is O(n^2) so it stops at 4096.
sim::RunReport run_1d(const ComplexBuffer& input, const KernelVariant& variant, const AblationFlags& flags,
                      const sim::CostWeights& weights, bool& failed) {
  kernels::KernelResult result = kernels::run_fft_kernel(input, variant, flags, {}, {}, weights);
  sim::RunReport report = std::move(result.report);
  if (flags.numerically_valid()) {
    double err = relative_l2_error(result.output, fft_reference(input));
    if (input.size() <= 4096) err = std::max(err, relative_l2_error(result.output, dft_oracle(input)));
    report.correctness.checked = true;
    report.correctness.max_rel_err = err;
    if (!acceptable(err)) failed = true;
  }
  return report;
}

fft2d::Fft2dResult run_2d(const ComplexBuffer& input, const fft2d::Distribution2D& dist, const KernelVariant& variant,
                          const sim::CostWeights& weights, bool& failed) {
  fft2d::Fft2dResult result = fft2d::run_fft2d(input, dist, variant, weights);
  if (dist.rows() * dist.cols() <= 65536) {
    const double err = relative_l2_error(result.output, dft2d_oracle(input, dist.rows(), dist.cols()));
    result.report.correctness.checked = true;
    result.report.correctness.max_rel_err = err;
    if (!acceptable(err)) failed = true;
  }
  return result;
}

Body cmd_fft1d(const ExperimentConfig& config) {
  const KernelVariant& variant = chosen_variant(config, "single_copy");
  static_cast<void>(FftDims(config.n));
  const ComplexBuffer input = seeded_input(config.n, config.seed);
  bool failed = false;
  const sim::RunReport report = run_1d(input, variant, config.flags, config.weights, failed);

  Body body;
  body.document["command"] = "fft1d";
  body.document["seed"] = config.seed;
  body.document["flags"] = config.flags.str();
  body.document["numerically_valid"] = config.flags.numerically_valid();
  merge(body.document, sim::to_json(report));
  body.records.push_back(body.document);
  if (failed) {
    body.exit_code = kExitVerifyFailed;
    body.message = "verification failed: relative error above " + std::to_string(kVerifyTolerance);
  }
  return body;
}

Body cmd_ladder(const ExperimentConfig& config) {
  static_cast<void>(FftDims(config.n));
  const ComplexBuffer input = seeded_input(config.n, config.seed);
  Body body;
  body.document["command"] = "ladder";
  body.document["n"] = config.n;
  body.document["seed"] = config.seed;
  bool failed = false;
  bool decreasing = true;
  double previous = 0.0;
  json rows = json::array();
  const auto& variants = kernels::ladder();
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const sim::RunReport report = run_1d(input, variants[i], {}, config.weights, failed);
    if (i > 0 && !(report.modeled_cost < previous)) decreasing = false;
    previous = report.modeled_cost;
    json row = sim::to_json(report);
    row["reference_ms"] = kLadderReferenceMs[i];
    rows.push_back(row);
    body.records.push_back(row);
  }
  body.document["strictly_decreasing"] = decreasing;
  body.document["rows"] = rows;
  if (failed) {
    body.exit_code = kExitVerifyFailed;
    body.message = "verification failed for at least one variant";
  } else if (!decreasing) {
    body.exit_code = kExitOrdering;
    body.message = "modeled cost is not strictly decreasing down the ladder";
  }
  return body;
}

Body cmd_ablate(const ExperimentConfig& config) {
  const KernelVariant& variant = chosen_variant(config, "initial");
  static_cast<void>(FftDims(config.n));
  const ComplexBuffer input = seeded_input(config.n, config.seed);
  Body body;
  body.document["command"] = "ablate";
  body.document["variant"] = variant.name;
  body.document["n"] = config.n;
  body.document["seed"] = config.seed;
  bool failed = false;
  double full = 0.0;
  std::optional<double> read_off, compute_only;
  json rows = json::array();
  for (const auto& ref : kAblationReferenceMs) {
    const AblationFlags flags = AblationFlags::parse(ref.flags);
    const sim::RunReport report = run_1d(input, variant, flags, config.weights, failed);
    if (flags == AblationFlags{}) full = report.modeled_cost;
    if (flags.str() == "YNYYY") read_off = report.modeled_cost;
    if (flags.str() == "NNYNN") compute_only = report.modeled_cost;
    json row;
    row["flags"] = flags.str();
    row["numerically_valid"] = flags.numerically_valid();
    merge(row, sim::to_json(report));
    row["reference_ms"] = ref.reference_ms;
    row["cost_ratio_to_full"] = full > 0.0 ? report.modeled_cost / full : 0.0;
    rows.push_back(row);
    body.records.push_back(row);
  }
  json ratios;
  ratios["read_reorder_off"] = full > 0.0 ? *read_off / full : 0.0;
  ratios["compute_only"] = full > 0.0 ? *compute_only / full : 0.0;
  body.document["ratios"] = ratios;
  body.document["rows"] = rows;
  if (failed) {
    body.exit_code = kExitVerifyFailed;
    body.message = "verification failed for a numerically valid row";
  }
  return body;
}

Body cmd_fft2d(const ExperimentConfig& config) {
  const KernelVariant& variant = chosen_variant(config, "single_copy");
  ComplexBuffer input;
  std::size_t rows = config.rows;
  std::size_t cols = config.cols;
  if (!config.input_path.empty()) {
    Array2D array = read_array(config.input_path);
    rows = array.rows;
    cols = array.cols;
    input = std::move(array.data);
  } else {
    input = seeded_input(rows * cols, config.seed);
  }
  const fft2d::Distribution2D dist(rows, cols, config.num_cores);
  bool failed = false;
  const fft2d::Fft2dResult result = run_2d(input, dist, variant, config.weights, failed);
  if (!config.dump_path.empty()) write_array(config.dump_path, Array2D{rows, cols, result.output});

  Body body;
  body.document["command"] = "fft2d";
  body.document["seed"] = config.seed;
  merge(body.document, fft2d::to_json(result));
  body.document["reference"] = fft2d_reference();
  body.records.push_back(body.document);
  if (failed) {
    body.exit_code = kExitVerifyFailed;
    body.message = "2D verification failed: relative error above " + std::to_string(kVerifyTolerance);
  }
  return body;
}

struct Point {
  json record;
  bool failed = false;
};

Body cmd_sweep(const ExperimentConfig& config) {
  std::vector<std::string> names = config.variants;
  if (names.empty()) {
    for (const auto& v : kernels::ladder()) names.push_back(v.name);
  }
  std::vector<const KernelVariant*> variants;
  for (const auto& name : names) variants.push_back(&kernels::variant_by_name(name));

  // Points in config order: variant outer, size or core count inner.
  std::vector<std::function<Point()>> points;
  if (!config.core_counts.empty()) {
    for (const KernelVariant* v : variants) {
      for (std::size_t cores : config.core_counts) {
        const fft2d::Distribution2D dist(config.rows, config.cols, cores);
        points.emplace_back([&config, v, dist] {
          Point p;
          const ComplexBuffer input = seeded_input(dist.rows() * dist.cols(), config.seed);
          const auto result = run_2d(input, dist, *v, config.weights, p.failed);
          p.record = fft2d::to_json(result);
          return p;
        });
      }
    }
  } else {
    std::vector<std::size_t> sizes = config.sizes;
    if (sizes.empty()) sizes = {64, 256, 1024, 4096};
    for (const KernelVariant* v : variants) {
      for (std::size_t n : sizes) {
        static_cast<void>(FftDims(n));
        points.emplace_back([&config, v, n] {
          Point p;
          const ComplexBuffer input = seeded_input(n, config.seed);
          p.record = sim::to_json(run_1d(input, *v, {}, config.weights, p.failed));
          p.record["rows"] = 1;
          p.record["cols"] = n;
          p.record["num_cores"] = 1;
          p.record["rows_per_core"] = 1;
          p.record["noc_cost_share"] = 0.0;
          return p;
        });
      }
    }
  }

  // Each point owns its simulator; results are collected in point order.
  std::vector<Point> done(points.size());
  const std::size_t width = std::max(1U, std::thread::hardware_concurrency());
  for (std::size_t first = 0; first < points.size(); first += width) {
    const std::size_t last = std::min(points.size(), first + width);
    std::vector<std::future<Point>> wave;
    for (std::size_t i = first; i < last; ++i) wave.push_back(std::async(std::launch::async, points[i]));
    for (std::size_t i = first; i < last; ++i) done[i] = wave[i - first].get();
  }

  Body body;
  body.document["command"] = "sweep";
  body.document["seed"] = config.seed;
  json array = json::array();
  bool failed = false;
  for (auto& p : done) {
    json record;
    record["command"] = "sweep";
    merge(record, p.record);
    array.push_back(record);
    body.records.push_back(record);
    failed = failed || p.failed;
  }
  body.document["points"] = array;
  if (failed) {
    body.exit_code = kExitVerifyFailed;
    body.message = "verification failed for at least one sweep point";
  }
  return body;
}

Body dispatch(const ExperimentConfig& config) {
  switch (config.command) {
    case Command::fft1d: return cmd_fft1d(config);
    case Command::fft2d: return cmd_fft2d(config);
    case Command::ablate: return cmd_ablate(config);
    case Command::ladder: return cmd_ladder(config);
    case Command::sweep: return cmd_sweep(config);
  }
  throw std::invalid_argument("unknown command");
}

}  // namespace

CommandOutcome run_command(const ExperimentConfig& config) {
  CommandOutcome outcome;
  try {
    if (config.repeat == 0) throw std::invalid_argument("--repeat must be at least 1");
    Body body;
    const auto start = std::chrono::steady_clock::now();
    for (unsigned i = 0; i < config.repeat; ++i) body = dispatch(config);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    outcome.seconds_per_run = elapsed.count() / config.repeat;

    outcome.report = config.format == Format::csv ? to_csv(body.records) : body.document.dump(2) + "\n";
    outcome.exit_code = body.exit_code;
    outcome.message = body.message;
    if (!config.output_path.empty()) {
      std::ofstream out(config.output_path, std::ios::binary);
      if (!out || !(out << outcome.report)) throw Error("cannot write report to " + config.output_path);
    }
  } catch (const std::exception& e) {
    outcome.exit_code = kExitError;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace tfft::bench
