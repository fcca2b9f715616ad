#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tfft::sim {

enum class DstOwner { none, math, pack };
enum class BinaryOp { add, sub, mul, div };

const char* to_string(DstOwner owner) noexcept;
const char* to_string(BinaryOp op) noexcept;

/// Destination register file: 16 segments of up to 1024 FP32 lanes, guarded
/// by the acquire -> commit -> wait -> release ownership protocol.
///
/// Math-side writes need owner == math before commit; pack-side reads need
/// owner == pack. Every violation throws ProtocolViolation naming the agent
/// and the current state.
class RegisterFile {
 public:
  static constexpr std::size_t kSegments = 16;
  static constexpr std::size_t kTileElems = 1024;

  explicit RegisterFile(bool strict = false) : strict_(strict) {}

  DstOwner owner() const noexcept { return owner_; }
  bool committed() const noexcept { return committed_; }
  /// In strict mode a second acquire errors instead of blocking.
  bool strict() const noexcept { return strict_; }
  bool can_acquire() const noexcept { return owner_ == DstOwner::none; }

  void acquire(const std::string& agent);
  void commit(const std::string& agent);
  void wait(const std::string& agent);
  void release(const std::string& agent);

  /// copy_tile body: writes `values` into a segment.
  void load(std::size_t seg, std::span<const float> values, const std::string& agent);
  /// Elementwise FP32 op; result overwrites seg_a.
  void binary(BinaryOp op, std::size_t seg_a, std::size_t seg_b, const std::string& agent);
  /// pack_tile body: the populated lanes of a segment.
  std::span<const float> pack_source(std::size_t seg, const std::string& agent) const;

  std::span<const float> segment(std::size_t seg) const;

 private:
  void check_segment(std::size_t seg) const;
  void require_math(const char* what, const std::string& agent) const;

  bool strict_;
  DstOwner owner_ = DstOwner::none;
  bool committed_ = false;
  std::array<std::vector<float>, kSegments> segs_;
};

}  // namespace tfft::sim
