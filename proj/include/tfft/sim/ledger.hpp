#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace tfft::sim {

/// Per-counter cost weights. Defaults are calibration targets chosen so the
/// kernel ladder orders like the measured runtimes; they are not hardware
/// latencies.
struct CostWeights {
  double mover_access_32 = 3.0;
  double dram_access_32 = 6.0;
  double thcon_access_32 = 1.5;
  double thcon_access_128 = 1.6;
  double tile_ops = 1.0;
  double noc_words = 0.5;
  // Calibration knob for whole-step batching (see CostLedger::batch_residency).
  double batch_residency = 0.5;

  /// Throws std::invalid_argument for an unknown name.
  void set(std::string_view name, double value);
  double get(std::string_view name) const;

  bool operator==(const CostWeights&) const = default;
};

/// Transaction counters for one core (or a sum over cores). Counters only
/// ever grow during a run.
struct CostLedger {
  std::uint64_t mover_access_32 = 0;   // baby-core SRAM loads and stores
  std::uint64_t dram_access_32 = 0;    // external DRAM words read or written
  std::uint64_t thcon_access_32 = 0;   // ThCon 32-bit SRAM transactions
  std::uint64_t thcon_access_128 = 0;  // ThCon 128-bit SRAM transactions
  std::uint64_t tile_ops = 0;          // copy_tile, SFPU op, pack_tile
  std::uint64_t noc_words = 0;         // 32-bit words sent over the NoC
  // Words pushed through stream CBs while the whole step is staged as one
  // batch, i.e. held resident while the other agents idle.
  std::uint64_t batch_residency = 0;

  // ThCon transactions by issuing compute core: UNPACK, MATH, PACK.
  // Informational only; never weighted.
  std::array<std::uint64_t, 3> thcon_by_issuer{};

  double modeled_cost(const CostWeights& w) const noexcept;
  std::uint64_t get(std::string_view name) const;

  CostLedger& operator+=(const CostLedger& other) noexcept;
  bool operator==(const CostLedger&) const = default;
};

/// Counter names in report order; also the valid keys of CostWeights.
inline constexpr std::array<std::string_view, 7> kCounterNames = {
    "mover_access_32", "dram_access_32", "thcon_access_32", "thcon_access_128",
    "tile_ops",        "noc_words",      "batch_residency"};

}  // namespace tfft::sim
