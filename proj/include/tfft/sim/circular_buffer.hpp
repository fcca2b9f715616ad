#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>

#include "tfft/sim/memory.hpp"

namespace tfft::sim {

using CbId = std::size_t;
inline constexpr CbId kNoCb = std::numeric_limits<CbId>::max();

/// A page slot obtained from reserve() or wait_front(). `seq` is the page's
/// position in the CB's lifetime sequence; the slot is seq % num_pages.
struct PageHandle {
  CbId cb = kNoCb;
  std::uint64_t seq = 0;
  Ref ref;
};

/// Page-granular FIFO living in SRAM. Tracks three monotone counters with
/// popped <= pushed <= reserved and reserved - popped <= num_pages.
///
/// The methods here are the non-blocking core; Core wraps reserve and
/// wait_front in awaitables that block the calling agent instead of failing.
class CircularBuffer {
 public:
  CircularBuffer(CbId id, std::string name, Ref region, std::size_t page_elems, std::size_t num_pages,
                 bool batched);

  CbId id() const noexcept { return id_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t page_elems() const noexcept { return page_elems_; }
  std::size_t num_pages() const noexcept { return num_pages_; }
  /// Pages pushed here count towards CostLedger::batch_residency.
  bool batched() const noexcept { return batched_; }
  const Ref& region() const noexcept { return region_; }

  std::uint64_t reserved_count() const noexcept { return reserved_; }
  std::uint64_t pushed_count() const noexcept { return pushed_; }
  std::uint64_t popped_count() const noexcept { return popped_; }
  std::size_t live() const noexcept { return static_cast<std::size_t>(reserved_ - popped_); }
  std::size_t available() const noexcept { return static_cast<std::size_t>(pushed_ - popped_); }

  bool can_reserve() const noexcept { return live() < num_pages_; }
  bool can_wait(std::size_t count) const noexcept { return available() >= count; }

  PageHandle reserve();
  void push(const PageHandle& page);
  /// Pushes the oldest reserved, unpushed page (tt-metal's cb_push_back).
  PageHandle push_back();
  PageHandle front() const;
  void pop();

  /// Reserved and not yet pushed: the producer may write it.
  bool writable(const PageHandle& page) const noexcept;
  /// Pushed and not yet popped: the consumer may read it.
  bool readable(const PageHandle& page) const noexcept;

 private:
  Ref page_ref(std::uint64_t seq) const;

  CbId id_;
  std::string name_;
  Ref region_;
  std::size_t page_elems_;
  std::size_t num_pages_;
  bool batched_;
  std::uint64_t reserved_ = 0;
  std::uint64_t pushed_ = 0;
  std::uint64_t popped_ = 0;
};

}  // namespace tfft::sim
