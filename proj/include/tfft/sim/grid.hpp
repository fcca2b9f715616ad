#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "tfft/sim/core.hpp"

namespace tfft::sim {

/// One NoC transfer of `src.count` words from a span on one core into
/// another core's SRAM. Destination element k lands at dst + k * dst_stride.
struct NocTransfer {
  std::size_t src_core = 0;
  Ref src;
  std::size_t dst_core = 0;
  Ref dst;  // dst.count is the extent the strided writes must stay within
  std::size_t dst_stride = 1;
};

/// A flat grid of isolated cores. All cores are equidistant on the NoC, and
/// the only way data crosses between them is noc_exchange().
class CoreGrid {
 public:
  explicit CoreGrid(std::size_t num_cores, CoreConfig config = {});

  std::size_t size() const noexcept { return cores_.size(); }
  Core& core(std::size_t i);
  const Core& core(std::size_t i) const;

  /// Delivers every transfer. Each word moved adds one to the sending
  /// core's noc_words, self-transfers included. Destinations must lie in
  /// reserved SRAM on the receiving core, else AllocationError.
  void noc_exchange(std::span<const NocTransfer> transfers);

  /// Sum of every core's ledger.
  CostLedger aggregate_ledger() const;

 private:
  std::vector<std::unique_ptr<Core>> cores_;
};

}  // namespace tfft::sim
