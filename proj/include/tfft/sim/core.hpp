#pragma once

// One simulated Tensix-like core: SRAM arena, external DRAM, circular
// buffers, the dst register file, the cost ledger, and the scheduler that
// interleaves the agent programs issuing operations against them.
//
// A Core is single-owner. Agents run on the caller's thread, one at a time.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tfft/sim/circular_buffer.hpp"
#include "tfft/sim/ledger.hpp"
#include "tfft/sim/memory.hpp"
#include "tfft/sim/register_file.hpp"
#include "tfft/sim/scheduler.hpp"

namespace tfft::sim {

enum class Engine { baby_core, thcon };

/// Compute baby core issuing ThCon transactions.
enum class Issuer : std::uint8_t { unpack = 0, math = 1, pack = 2 };

/// How a copy is executed. Baby cores only issue 32-bit accesses; ThCon
/// may issue 128-bit accesses on the contiguous side of a copy.
struct Access {
  Engine engine = Engine::baby_core;
  unsigned width = 32;
  Issuer issuer = Issuer::unpack;
};

const char* to_string(Engine engine) noexcept;

struct CoreConfig {
  std::size_t sram_bytes = kDefaultSramBytes;
  bool strict_registers = false;
  bool record_trace = true;
  SchedulePolicy policy = SchedulePolicy::round_robin();
};

enum class TraceKind { gather_page, scatter_page, step_barrier };

struct TraceEvent {
  TraceKind kind;
  std::uint32_t step;
  std::uint32_t page;
};

class Core {
 public:
  explicit Core(CoreConfig config = {});
  Core(const Core&) = delete;
  Core& operator=(const Core&) = delete;

  const CoreConfig& config() const noexcept { return config_; }
  SramArena& sram() noexcept { return sram_; }
  const SramArena& sram() const noexcept { return sram_; }
  Dram& dram() noexcept { return dram_; }
  CostLedger& ledger() noexcept { return ledger_; }
  const CostLedger& ledger() const noexcept { return ledger_; }
  RegisterFile& regs() noexcept { return regs_; }
  Scheduler& scheduler() noexcept { return sched_; }

  std::span<float> words(const Ref& r);
  std::span<const float> words(const Ref& r) const;

  // Circular buffers ------------------------------------------------------

  CbId create_cb(const std::string& name, std::size_t page_elems, std::size_t num_pages, bool batched = false);
  CircularBuffer& cb(CbId id);
  const CircularBuffer& cb(CbId id) const;

  struct Checkpoint {
    std::uint64_t sram;
    std::size_t cbs;
  };
  /// Drop every allocation and CB created after `mark`.
  Checkpoint checkpoint() const noexcept { return {sram_.checkpoint(), cbs_.size()}; }
  void rollback(const Checkpoint& mark);

  /// Producer side: blocks while every page is live.
  BlockingOp<PageHandle> reserve(CbId id);
  /// Consumer side: blocks until `count` pages are pushed; returns the front.
  BlockingOp<PageHandle> wait_front(CbId id, std::size_t count = 1);
  void push(const PageHandle& page);
  PageHandle push_back(CbId id);
  void pop(CbId id);

  // Register protocol and tile operations ----------------------------------

  /// Blocks until dst is free; in strict mode errors instead.
  BlockingOp<void> regs_acquire();
  void regs_commit();
  void regs_wait();
  void regs_release();

  void copy_tile(const PageHandle& page, std::size_t dst_segment);
  void sfpu_binary(BinaryOp op, std::size_t seg_a, std::size_t seg_b);
  void pack_tile(std::size_t seg, const PageHandle& dst_page);

  /// Wait, acquire, copy both fronts to segments 0 and 1, apply `op`,
  /// commit, optionally pop the inputs, reserve the target, wait, pack
  /// segment 0, release, push.
  Task maths_sfpu_op(BinaryOp op, CbId in1, CbId in2, CbId tgt, bool pop_in1 = false, bool pop_in2 = false);

  // Data movement -----------------------------------------------------------

  /// Contiguous copy. A 128-bit request needs both spans 16-byte aligned and
  /// a length that is a multiple of four words.
  void mover_copy(const Ref& src, const Ref& dst, Access access);
  /// dst[k] = src_base[index[k]]: scattered loads, contiguous stores.
  void mover_gather(const Ref& src_base, std::span<const std::uint32_t> index, const Ref& dst, Access access);
  /// dst_base[index[k]] = src[k]: contiguous loads, scattered stores.
  void mover_scatter(const Ref& src, std::span<const std::uint32_t> index, const Ref& dst_base, Access access);
  /// Page handoff without element traffic: a CB page aliases the buffer, so
  /// SRAM sides cost nothing. DRAM sides are still charged per word.
  void alias_copy(const Ref& src, const Ref& dst);

  /// Uncounted host access (initial loads, result read-back).
  void host_write(const Ref& dst, std::span<const float> values);
  std::vector<float> host_read(const Ref& src) const;

  // Execution ---------------------------------------------------------------

  ScheduleStats run(std::vector<std::pair<std::string, Task>> programs);

  void trace(TraceKind kind, std::size_t step, std::size_t page);
  const std::vector<TraceEvent>& trace_events() const noexcept { return trace_; }
  std::uint64_t event_count() const noexcept { return events_; }
  bool faulted() const noexcept { return faulted_; }

  /// Elements packed into CBs by pack_tile (conservation checks).
  std::uint64_t packed_elements() const noexcept { return packed_elements_; }

 private:
  void ensure_healthy();
  void charge(Space space, const Access& access, std::size_t words, bool wide);
  void check_access(const Access& access) const;

  CoreConfig config_;
  SramArena sram_;
  Dram dram_;
  CostLedger ledger_;
  RegisterFile regs_;
  Scheduler sched_;
  std::vector<std::unique_ptr<CircularBuffer>> cbs_;
  std::vector<TraceEvent> trace_;
  std::uint64_t events_ = 0;
  std::uint64_t packed_elements_ = 0;
  bool faulted_ = false;
};

}  // namespace tfft::sim
