#include <algorithm>
#include <stdexcept>
#include <string>

#include "tfft/error.hpp"
#include "tfft/sim/core.hpp"

namespace tfft::sim {

const char* to_string(Engine engine) noexcept { return engine == Engine::thcon ? "thcon" : "baby_core"; }

Core::Core(CoreConfig config) : config_(config), sram_(config.sram_bytes), regs_(config.strict_registers) {
  sched_.set_policy(config.policy);
}

std::span<float> Core::words(const Ref& r) {
  return r.space == Space::sram ? sram_.words(r) : dram_.words(r);
}

std::span<const float> Core::words(const Ref& r) const {
  return r.space == Space::sram ? sram_.words(r) : dram_.words(r);
}

void Core::ensure_healthy() {
  if (faulted_) {
    throw ProtocolViolation("core halted by an earlier protocol violation or deadlock");
  }
  ++events_;
}

// ---------------------------------------------------------------------------
// Circular buffers

CbId Core::create_cb(const std::string& name, std::size_t page_elems, std::size_t num_pages, bool batched) {
  const Ref region = sram_.allocate("cb:" + name, page_elems * num_pages);
  const CbId id = cbs_.size();
  cbs_.push_back(std::make_unique<CircularBuffer>(id, name, region, page_elems, num_pages, batched));
  return id;
}

CircularBuffer& Core::cb(CbId id) {
  if (id >= cbs_.size()) throw ProtocolViolation("unknown circular buffer id " + std::to_string(id));
  return *cbs_[id];
}

const CircularBuffer& Core::cb(CbId id) const {
  if (id >= cbs_.size()) throw ProtocolViolation("unknown circular buffer id " + std::to_string(id));
  return *cbs_[id];
}

void Core::rollback(const Checkpoint& mark) {
  cbs_.resize(std::min(cbs_.size(), mark.cbs));
  sram_.rollback(mark.sram);
}

BlockingOp<PageHandle> Core::reserve(CbId id) {
  CircularBuffer& buffer = cb(id);
  return BlockingOp<PageHandle>(
      sched_, [&buffer] { return buffer.can_reserve(); },
      [this, &buffer] {
        ensure_healthy();
        return buffer.reserve();
      },
      "reserve(" + buffer.name() + ")");
}

BlockingOp<PageHandle> Core::wait_front(CbId id, std::size_t count) {
  CircularBuffer& buffer = cb(id);
  if (count == 0 || count > buffer.num_pages()) {
    throw ProtocolViolation("wait_front for " + std::to_string(count) + " pages on CB '" + buffer.name() + "' of " +
                            std::to_string(buffer.num_pages()));
  }
  return BlockingOp<PageHandle>(
      sched_, [&buffer, count] { return buffer.can_wait(count); },
      [this, &buffer] {
        ensure_healthy();
        return buffer.front();
      },
      "wait_front(" + buffer.name() + ", " + std::to_string(count) + ")");
}

void Core::push(const PageHandle& page) {
  ensure_healthy();
  if (page.cb >= cbs_.size()) throw ProtocolViolation("push of a page from an unknown CB");
  CircularBuffer& buffer = *cbs_[page.cb];
  buffer.push(page);
  if (buffer.batched()) ledger_.batch_residency += buffer.page_elems();
}

PageHandle Core::push_back(CbId id) {
  ensure_healthy();
  CircularBuffer& buffer = cb(id);
  PageHandle page = buffer.push_back();
  if (buffer.batched()) ledger_.batch_residency += buffer.page_elems();
  return page;
}

void Core::pop(CbId id) {
  ensure_healthy();
  cb(id).pop();
}

// ---------------------------------------------------------------------------
// Registers and tiles

BlockingOp<void> Core::regs_acquire() {
  std::function<bool()> ready = [this] { return regs_.can_acquire(); };
  if (regs_.strict()) ready = nullptr;
  return BlockingOp<void>(
      sched_, std::move(ready),
      [this] {
        ensure_healthy();
        regs_.acquire(sched_.current_agent());
      },
      "regs_acquire");
}

void Core::regs_commit() {
  ensure_healthy();
  regs_.commit(sched_.current_agent());
}

void Core::regs_wait() {
  ensure_healthy();
  regs_.wait(sched_.current_agent());
}

void Core::regs_release() {
  ensure_healthy();
  regs_.release(sched_.current_agent());
}

void Core::copy_tile(const PageHandle& page, std::size_t dst_segment) {
  ensure_healthy();
  if (page.cb >= cbs_.size() || !cbs_[page.cb]->readable(page)) {
    throw ProtocolViolation("copy_tile from a page that is not pushed and live");
  }
  regs_.load(dst_segment, sram_.words(page.ref), sched_.current_agent());
  ++ledger_.tile_ops;
}

void Core::sfpu_binary(BinaryOp op, std::size_t seg_a, std::size_t seg_b) {
  ensure_healthy();
  regs_.binary(op, seg_a, seg_b, sched_.current_agent());
  ++ledger_.tile_ops;
}

void Core::pack_tile(std::size_t seg, const PageHandle& dst_page) {
  ensure_healthy();
  const auto values = regs_.pack_source(seg, sched_.current_agent());
  if (dst_page.cb >= cbs_.size() || !cbs_[dst_page.cb]->writable(dst_page)) {
    throw ProtocolViolation("pack_tile into a page that is not reserved and unpushed");
  }
  if (values.size() > dst_page.ref.count) {
    throw ProtocolViolation("pack_tile of " + std::to_string(values.size()) + " lanes into a " +
                            std::to_string(dst_page.ref.count) + "-element page");
  }
  std::copy(values.begin(), values.end(), sram_.words(dst_page.ref).begin());
  packed_elements_ += values.size();
  ++ledger_.tile_ops;
}

Task Core::maths_sfpu_op(BinaryOp op, CbId in1, CbId in2, CbId tgt, bool pop_in1, bool pop_in2) {
  const PageHandle a = co_await wait_front(in1);
  const PageHandle b = co_await wait_front(in2);
  co_await regs_acquire();
  copy_tile(a, 0);
  copy_tile(b, 1);
  sfpu_binary(op, 0, 1);
  regs_commit();
  if (pop_in1) pop(in1);
  if (pop_in2) pop(in2);
  const PageHandle out = co_await reserve(tgt);
  regs_wait();
  pack_tile(0, out);
  regs_release();
  push(out);
}

// ---------------------------------------------------------------------------
// Data movement

void Core::check_access(const Access& access) const {
  if (access.width != 32 && access.width != 128) {
    throw std::invalid_argument("access width must be 32 or 128 bits");
  }
  if (access.engine == Engine::baby_core && access.width != 32) {
    throw std::invalid_argument("baby cores issue 32-bit accesses only");
  }
}

void Core::charge(Space space, const Access& access, std::size_t words, bool wide) {
  if (space == Space::dram) {
    ledger_.dram_access_32 += words;
    return;
  }
  if (access.engine == Engine::baby_core) {
    ledger_.mover_access_32 += words;
    return;
  }
  const std::size_t transactions = wide ? words / 4 : words;
  if (wide) {
    ledger_.thcon_access_128 += transactions;
  } else {
    ledger_.thcon_access_32 += transactions;
  }
  ledger_.thcon_by_issuer[static_cast<std::size_t>(access.issuer)] += transactions;
}

void Core::mover_copy(const Ref& src, const Ref& dst, Access access) {
  ensure_healthy();
  check_access(access);
  if (src.count != dst.count) throw InvalidDimension("mover_copy: span lengths differ");
  const bool wide = access.width == 128;
  if (wide && !(src.wide_ok() && dst.wide_ok())) {
    throw AlignmentError("128-bit copy needs 16-byte aligned spans with a multiple of 4 words (got " +
                         std::to_string(src.count) + " words)");
  }
  const auto from = words(src);
  std::copy(from.begin(), from.end(), words(dst).begin());
  charge(src.space, access, src.count, wide);
  charge(dst.space, access, dst.count, wide);
}

void Core::mover_gather(const Ref& src_base, std::span<const std::uint32_t> index, const Ref& dst, Access access) {
  ensure_healthy();
  check_access(access);
  if (index.size() != dst.count) throw InvalidDimension("mover_gather: index and destination lengths differ");
  const bool wide = access.width == 128;
  if (wide && !dst.wide_ok()) {
    throw AlignmentError("128-bit gather stores need a 16-byte aligned destination with a multiple of 4 words");
  }
  const auto from = words(src_base);
  auto to = words(dst);
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= from.size()) throw AllocationError("gather index outside the source span");
    to[k] = from[index[k]];
  }
  charge(src_base.space, access, index.size(), false);
  charge(dst.space, access, dst.count, wide);
}

void Core::mover_scatter(const Ref& src, std::span<const std::uint32_t> index, const Ref& dst_base,
                         Access access) {
  ensure_healthy();
  check_access(access);
  if (index.size() != src.count) throw InvalidDimension("mover_scatter: index and source lengths differ");
  const bool wide = access.width == 128;
  if (wide && !src.wide_ok()) {
    throw AlignmentError("128-bit scatter loads need a 16-byte aligned source with a multiple of 4 words");
  }
  const auto from = words(src);
  auto to = words(dst_base);
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= to.size()) throw AllocationError("scatter index outside the destination span");
    to[index[k]] = from[k];
  }
  charge(src.space, access, src.count, wide);
  charge(dst_base.space, access, index.size(), false);
}

void Core::alias_copy(const Ref& src, const Ref& dst) {
  ensure_healthy();
  if (src.count != dst.count) throw InvalidDimension("alias_copy: span lengths differ");
  const auto from = words(src);
  std::copy(from.begin(), from.end(), words(dst).begin());
  if (src.space == Space::dram) ledger_.dram_access_32 += src.count;
  if (dst.space == Space::dram) ledger_.dram_access_32 += dst.count;
}

void Core::host_write(const Ref& dst, std::span<const float> values) {
  if (values.size() != dst.count) throw InvalidDimension("host_write: length mismatch");
  std::copy(values.begin(), values.end(), words(dst).begin());
}

std::vector<float> Core::host_read(const Ref& src) const {
  const auto from = words(src);
  return {from.begin(), from.end()};
}

// ---------------------------------------------------------------------------
// Execution

ScheduleStats Core::run(std::vector<std::pair<std::string, Task>> programs) {
  if (faulted_) throw ProtocolViolation("core halted by an earlier protocol violation or deadlock");
  try {
    return sched_.run(std::move(programs));
  } catch (...) {
    faulted_ = true;
    throw;
  }
}

void Core::trace(TraceKind kind, std::size_t step, std::size_t page) {
  if (!config_.record_trace) return;
  trace_.push_back(TraceEvent{kind, static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(page)});
}

}  // namespace tfft::sim
