#include <algorithm>
#include <string>

#include "tfft/error.hpp"
#include "tfft/sim/register_file.hpp"

namespace tfft::sim {
namespace {

[[noreturn]] void violation(const std::string& agent, const std::string& what, DstOwner owner, bool committed) {
  throw ProtocolViolation("register protocol: agent '" + agent + "' attempted " + what + " while dst owner is " +
                          to_string(owner) + (committed ? " (committed)" : ""));
}

}  // namespace

const char* to_string(DstOwner owner) noexcept {
  switch (owner) {
    case DstOwner::none:
      return "none";
    case DstOwner::math:
      return "math";
    case DstOwner::pack:
      return "pack";
  }
  return "?";
}

const char* to_string(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::add:
      return "ADD";
    case BinaryOp::sub:
      return "SUB";
    case BinaryOp::mul:
      return "MUL";
    case BinaryOp::div:
      return "DIV";
  }
  return "?";
}

void RegisterFile::acquire(const std::string& agent) {
  if (owner_ != DstOwner::none) violation(agent, "acquire", owner_, committed_);
  owner_ = DstOwner::math;
  committed_ = false;
}

void RegisterFile::commit(const std::string& agent) {
  if (owner_ != DstOwner::math || committed_) violation(agent, "commit", owner_, committed_);
  committed_ = true;
}

void RegisterFile::wait(const std::string& agent) {
  if (owner_ != DstOwner::math || !committed_) violation(agent, "wait", owner_, committed_);
  owner_ = DstOwner::pack;
  committed_ = false;
}

void RegisterFile::release(const std::string& agent) {
  if (owner_ != DstOwner::pack) violation(agent, "release", owner_, committed_);
  owner_ = DstOwner::none;
}

void RegisterFile::check_segment(std::size_t seg) const {
  if (seg >= kSegments) {
    throw ProtocolViolation("dst segment " + std::to_string(seg) + " outside [0, 16)");
  }
}

void RegisterFile::require_math(const char* what, const std::string& agent) const {
  if (owner_ != DstOwner::math || committed_) violation(agent, what, owner_, committed_);
}

void RegisterFile::load(std::size_t seg, std::span<const float> values, const std::string& agent) {
  check_segment(seg);
  require_math("copy_tile", agent);
  if (values.size() > kTileElems) {
    throw ProtocolViolation("copy_tile of " + std::to_string(values.size()) + " values exceeds a 1024-lane tile");
  }
  segs_[seg].assign(values.begin(), values.end());
}

void RegisterFile::binary(BinaryOp op, std::size_t seg_a, std::size_t seg_b, const std::string& agent) {
  check_segment(seg_a);
  check_segment(seg_b);
  require_math("sfpu_binary", agent);
  auto& a = segs_[seg_a];
  const auto& b = segs_[seg_b];
  if (a.empty() || b.empty()) {
    throw ProtocolViolation("sfpu_binary on an unpopulated dst segment");
  }
  if (a.size() != b.size()) {
    throw ProtocolViolation("sfpu_binary on segments of different lane counts");
  }
  switch (op) {
    case BinaryOp::add:
      std::transform(a.begin(), a.end(), b.begin(), a.begin(), [](float x, float y) { return x + y; });
      break;
    case BinaryOp::sub:
      std::transform(a.begin(), a.end(), b.begin(), a.begin(), [](float x, float y) { return x - y; });
      break;
    case BinaryOp::mul:
      std::transform(a.begin(), a.end(), b.begin(), a.begin(), [](float x, float y) { return x * y; });
      break;
    case BinaryOp::div:
      std::transform(a.begin(), a.end(), b.begin(), a.begin(), [](float x, float y) { return x / y; });
      break;
  }
}

std::span<const float> RegisterFile::pack_source(std::size_t seg, const std::string& agent) const {
  check_segment(seg);
  if (owner_ != DstOwner::pack) violation(agent, "pack_tile", owner_, committed_);
  if (segs_[seg].empty()) {
    throw ProtocolViolation("pack_tile of an unpopulated dst segment");
  }
  return segs_[seg];
}

std::span<const float> RegisterFile::segment(std::size_t seg) const {
  check_segment(seg);
  return segs_[seg];
}

}  // namespace tfft::sim
