#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tfft/fft_core.hpp"
#include "tfft/kernels/variant.hpp"
#include "tfft/sim/ledger.hpp"

namespace tfft::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;         // bad config or simulator error
inline constexpr int kExitVerifyFailed = 2;  // output disagrees with an oracle
inline constexpr int kExitOrdering = 3;      // ladder costs not strictly decreasing

/// Largest relative L2 error a verified run may show.
inline constexpr double kVerifyTolerance = 1e-3;

/// Uniform values in [-1, 1) from std::mt19937_64(seed): the top 24 bits of
/// each draw scaled to [0, 1), doubled, minus one, so every value is exact in
/// FP32. Draws alternate real, imaginary per element.
ComplexBuffer seeded_input(std::size_t n, std::uint64_t seed);

/// rows x cols complex matrix, row-major.
struct Array2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  ComplexBuffer data;
};

/// Little-endian file: u32 rows, u32 cols, u32 planes (= 2), then the real
/// plane and the imaginary plane as FP32, row-major. Throws tfft::Error.
void write_array(const std::string& path, const Array2D& array);
Array2D read_array(const std::string& path);

/// "name=value,name=value" over the default weights. Throws
/// std::invalid_argument on unknown names or malformed values.
sim::CostWeights parse_weights(std::string_view text, sim::CostWeights base = {});

/// Nested objects flattened to dot-separated keys. Arrays are kept whole.
nlohmann::ordered_json flatten(const nlohmann::ordered_json& object);

/// Header row of the first record's flattened keys, then one row per record.
/// Missing fields are empty; strings containing commas or quotes are quoted.
std::string to_csv(const std::vector<nlohmann::ordered_json>& records);

enum class Command { fft1d, fft2d, ablate, ladder, sweep };
enum class Format { json, csv };

Command parse_command(std::string_view name);
const char* to_string(Command command) noexcept;

struct ExperimentConfig {
  Command command = Command::fft1d;
  std::size_t n = 16384;
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::size_t num_cores = 8;
  std::string variant;  // empty: single_copy, or initial for ablate
  kernels::AblationFlags flags;
  sim::CostWeights weights;
  std::uint64_t seed = 1;
  std::string output_path;  // empty: stdout
  Format format = Format::json;

  std::vector<std::size_t> sizes;         // sweep over 1D sizes
  std::vector<std::string> variants;      // sweep variants
  std::vector<std::size_t> core_counts;   // sweep over 2D core counts
  std::string input_path;                 // fft2d: read input from an array file
  std::string dump_path;                  // fft2d: write the output array
  unsigned repeat = 1;                    // re-run to time the simulator
};

struct CommandOutcome {
  int exit_code = kExitOk;
  std::string report;   // serialized report (may be present on exit 2 or 3)
  std::string message;  // diagnostic for stderr
  double seconds_per_run = 0.0;
};

/// Runs one experiment. Never throws: errors map to the exit-code contract.
/// Writes the report to config.output_path when set.
CommandOutcome run_command(const ExperimentConfig& config);

}  // namespace tfft::bench
