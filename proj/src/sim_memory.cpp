#include <algorithm>
#include <string>

#include "tfft/error.hpp"
#include "tfft/sim/memory.hpp"

namespace tfft::sim {
namespace {

constexpr std::size_t kAlign = 16;

std::size_t align_up(std::size_t v) { return (v + kAlign - 1) / kAlign * kAlign; }

}  // namespace

SramArena::SramArena(std::size_t capacity_bytes)
    : capacity_(capacity_bytes), storage_(capacity_bytes / kWordBytes, 0.0F) {}

Ref SramArena::allocate(const std::string& name, std::size_t words) {
  const std::size_t bytes = align_up(std::max<std::size_t>(words, 1) * kWordBytes);
  std::size_t cursor = 0;
  auto pos = allocs_.begin();
  for (; pos != allocs_.end(); ++pos) {
    if (pos->offset >= cursor + bytes) break;
    cursor = align_up(pos->offset + pos->size);
  }
  if (cursor + bytes > capacity_) {
    throw AllocationError("SRAM overflow allocating '" + name + "' (" + std::to_string(bytes) + " bytes): " +
                          std::to_string(used()) + " of " + std::to_string(capacity_) + " bytes in use");
  }
  allocs_.insert(pos, Allocation{next_id_++, name, cursor, bytes});
  high_water_ = std::max(high_water_, used());
  const Ref region{Space::sram, cursor / kWordBytes, words};
  std::fill_n(storage_.begin() + static_cast<std::ptrdiff_t>(region.offset), words, 0.0F);
  return region;
}

void SramArena::free(const Ref& region) {
  const std::size_t offset = region.byte_address();
  auto it = std::find_if(allocs_.begin(), allocs_.end(), [&](const Allocation& a) { return a.offset == offset; });
  if (it == allocs_.end()) {
    throw AllocationError("free of unallocated SRAM offset " + std::to_string(offset));
  }
  allocs_.erase(it);
}

void SramArena::rollback(std::uint64_t mark) {
  std::erase_if(allocs_, [mark](const Allocation& a) { return a.id >= mark; });
}

std::size_t SramArena::used() const noexcept {
  std::size_t total = 0;
  for (const auto& a : allocs_) total += a.size;
  return total;
}

bool SramArena::contains(const Ref& r) const noexcept {
  if (r.space != Space::sram) return false;
  const std::size_t begin = r.byte_address();
  const std::size_t end = begin + r.count * kWordBytes;
  return std::any_of(allocs_.begin(), allocs_.end(),
                     [&](const Allocation& a) { return begin >= a.offset && end <= a.offset + a.size; });
}

std::span<float> SramArena::words(const Ref& r) {
  if (r.space != Space::sram || (r.offset + r.count) * kWordBytes > capacity_) {
    throw AllocationError("SRAM access outside the arena at word " + std::to_string(r.offset));
  }
  return std::span<float>(storage_).subspan(r.offset, r.count);
}

std::span<const float> SramArena::words(const Ref& r) const {
  if (r.space != Space::sram || (r.offset + r.count) * kWordBytes > capacity_) {
    throw AllocationError("SRAM access outside the arena at word " + std::to_string(r.offset));
  }
  return std::span<const float>(storage_).subspan(r.offset, r.count);
}

Ref Dram::allocate(std::size_t words) {
  // Keep every DRAM buffer 16-byte aligned like SRAM.
  const std::size_t offset = (storage_.size() + 3) / 4 * 4;
  storage_.resize(offset + words, 0.0F);
  return Ref{Space::dram, offset, words};
}

std::span<float> Dram::words(const Ref& r) {
  if (r.space != Space::dram || r.offset + r.count > storage_.size()) {
    throw AllocationError("DRAM access outside allocated range");
  }
  return std::span<float>(storage_).subspan(r.offset, r.count);
}

std::span<const float> Dram::words(const Ref& r) const {
  if (r.space != Space::dram || r.offset + r.count > storage_.size()) {
    throw AllocationError("DRAM access outside allocated range");
  }
  return std::span<const float>(storage_).subspan(r.offset, r.count);
}

}  // namespace tfft::sim
