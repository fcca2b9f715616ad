#include <string>
#include <utility>

#include "tfft/error.hpp"
#include "tfft/sim/circular_buffer.hpp"

namespace tfft::sim {

CircularBuffer::CircularBuffer(CbId id, std::string name, Ref region, std::size_t page_elems,
                               std::size_t num_pages, bool batched)
    : id_(id),
      name_(std::move(name)),
      region_(region),
      page_elems_(page_elems),
      num_pages_(num_pages),
      batched_(batched) {
  if (page_elems == 0 || num_pages == 0 || region.count < page_elems * num_pages) {
    throw InvalidDimension("circular buffer '" + name_ + "' needs a non-empty page geometry");
  }
}

Ref CircularBuffer::page_ref(std::uint64_t seq) const {
  return region_.slice(static_cast<std::size_t>(seq % num_pages_) * page_elems_, page_elems_);
}

PageHandle CircularBuffer::reserve() {
  if (!can_reserve()) {
    throw ProtocolViolation("reserve on full CB '" + name_ + "' (" + std::to_string(live()) + " live pages)");
  }
  const std::uint64_t seq = reserved_++;
  return PageHandle{id_, seq, page_ref(seq)};
}

void CircularBuffer::push(const PageHandle& page) {
  if (page.cb != id_) {
    throw ProtocolViolation("push of a foreign page into CB '" + name_ + "'");
  }
  if (page.seq < pushed_) {
    throw ProtocolViolation("push of an already pushed page into CB '" + name_ + "'");
  }
  if (page.seq >= reserved_) {
    throw ProtocolViolation("push without reserve on CB '" + name_ + "'");
  }
  if (page.seq != pushed_) {
    throw ProtocolViolation("out-of-order push on CB '" + name_ + "'");
  }
  ++pushed_;
}

PageHandle CircularBuffer::push_back() {
  if (pushed_ == reserved_) {
    throw ProtocolViolation("push without reserve on CB '" + name_ + "'");
  }
  const PageHandle page{id_, pushed_, page_ref(pushed_)};
  ++pushed_;
  return page;
}

PageHandle CircularBuffer::front() const {
  if (available() == 0) {
    throw ProtocolViolation("front of empty CB '" + name_ + "'");
  }
  return PageHandle{id_, popped_, page_ref(popped_)};
}

void CircularBuffer::pop() {
  if (available() == 0) {
    throw ProtocolViolation("pop on empty CB '" + name_ + "'");
  }
  ++popped_;
}

bool CircularBuffer::writable(const PageHandle& page) const noexcept {
  return page.cb == id_ && page.seq >= pushed_ && page.seq < reserved_;
}

bool CircularBuffer::readable(const PageHandle& page) const noexcept {
  return page.cb == id_ && page.seq >= popped_ && page.seq < pushed_;
}

}  // namespace tfft::sim
