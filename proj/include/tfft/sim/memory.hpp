#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tfft::sim {

/// 1.3MB of local SRAM per core.
inline constexpr std::size_t kDefaultSramBytes = 1'331'200;
inline constexpr std::size_t kWordBytes = 4;

enum class Space { sram, dram };

/// A span of 32-bit words in one address space. Offsets are in words, so a
/// byte address is offset * 4 and 16-byte alignment means offset % 4 == 0.
struct Ref {
  Space space = Space::sram;
  std::size_t offset = 0;
  std::size_t count = 0;

  Ref slice(std::size_t first, std::size_t n) const { return {space, offset + first, n}; }
  std::size_t byte_address() const noexcept { return offset * kWordBytes; }
  bool aligned16() const noexcept { return offset % 4 == 0; }
  /// Eligible for a 128-bit contiguous access.
  bool wide_ok() const noexcept { return aligned16() && count % 4 == 0; }

  bool operator==(const Ref&) const = default;
};

struct Allocation {
  std::uint64_t id = 0;
  std::string name;
  std::size_t offset = 0;  // bytes
  std::size_t size = 0;    // bytes
};

/// First-fit allocator over a fixed SRAM capacity. Every allocation is
/// 16-byte aligned; exceeding capacity throws AllocationError.
class SramArena {
 public:
  explicit SramArena(std::size_t capacity_bytes = kDefaultSramBytes);

  Ref allocate(const std::string& name, std::size_t words);
  void free(const Ref& region);

  /// Allocations made after a checkpoint can be dropped with rollback().
  std::uint64_t checkpoint() const noexcept { return next_id_; }
  void rollback(std::uint64_t mark);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t used() const noexcept;
  std::size_t high_water() const noexcept { return high_water_; }
  const std::vector<Allocation>& allocations() const noexcept { return allocs_; }

  /// True when `r` lies inside one live allocation.
  bool contains(const Ref& r) const noexcept;

  std::span<float> words(const Ref& r);
  std::span<const float> words(const Ref& r) const;

 private:
  std::size_t capacity_;
  std::vector<float> storage_;
  std::vector<Allocation> allocs_;  // sorted by offset
  std::uint64_t next_id_ = 1;
  std::size_t high_water_ = 0;
};

/// External on-card DRAM: unbounded bump allocation.
class Dram {
 public:
  Ref allocate(std::size_t words);
  std::span<float> words(const Ref& r);
  std::span<const float> words(const Ref& r) const;
  std::size_t size_words() const noexcept { return storage_.size(); }

 private:
  std::vector<float> storage_;
};

}  // namespace tfft::sim
