#include <string>

#include "tfft/error.hpp"
#include "tfft/sim/grid.hpp"

namespace tfft::sim {

CoreGrid::CoreGrid(std::size_t num_cores, CoreConfig config) {
  if (num_cores == 0) throw InvalidDimension("a core grid needs at least one core");
  cores_.reserve(num_cores);
  for (std::size_t i = 0; i < num_cores; ++i) cores_.push_back(std::make_unique<Core>(config));
}

Core& CoreGrid::core(std::size_t i) {
  if (i >= cores_.size()) throw InvalidDimension("core index " + std::to_string(i) + " outside the grid");
  return *cores_[i];
}

const Core& CoreGrid::core(std::size_t i) const {
  if (i >= cores_.size()) throw InvalidDimension("core index " + std::to_string(i) + " outside the grid");
  return *cores_[i];
}

void CoreGrid::noc_exchange(std::span<const NocTransfer> transfers) {
  // Validate everything first so a bad batch moves nothing.
  for (const auto& t : transfers) {
    Core& dst = core(t.dst_core);
    core(t.src_core);
    if (t.dst.space != Space::sram || t.src.space != Space::sram) {
      throw AllocationError("NoC transfers move SRAM to SRAM");
    }
    const std::size_t needed = t.src.count == 0 ? 0 : (t.src.count - 1) * t.dst_stride + 1;
    if (needed > t.dst.count) {
      throw AllocationError("NoC transfer of " + std::to_string(t.src.count) + " words overruns its destination span");
    }
    const Ref touched = t.dst.slice(0, needed);
    if ((touched.offset + touched.count) * kWordBytes > dst.sram().capacity()) {
      throw AllocationError("NoC transfer exceeds the SRAM arena of core " + std::to_string(t.dst_core));
    }
    if (!dst.sram().contains(touched)) {
      throw AllocationError("NoC transfer into unreserved SRAM on core " + std::to_string(t.dst_core));
    }
  }
  for (const auto& t : transfers) {
    const auto from = core(t.src_core).words(t.src);
    auto to = core(t.dst_core).words(t.dst);
    for (std::size_t k = 0; k < from.size(); ++k) to[k * t.dst_stride] = from[k];
    core(t.src_core).ledger().noc_words += t.src.count;
  }
}

CostLedger CoreGrid::aggregate_ledger() const {
  CostLedger total;
  for (const auto& c : cores_) total += c->ledger();
  return total;
}

}  // namespace tfft::sim
