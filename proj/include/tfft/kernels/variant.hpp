#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tfft/sim/core.hpp"

namespace tfft::kernels {

enum class ReorderScheme {
  two_reorder,  // gather from natural order, scatter back to natural order, every step
  one_reorder,  // scatter each step's results straight into the next step's stream order
};

/// One rung of the optimization ladder. Features accumulate down the
/// ladder, except that single_copy's data reorders run at 32-bit width
/// because none of its data accesses stay contiguous.
struct KernelVariant {
  std::string name;
  std::size_t chunk_pages = 1;  // 0: the whole step is staged as one batch
  sim::Engine copy_engine = sim::Engine::baby_core;
  unsigned contiguous_width = 32;
  ReorderScheme reorder_scheme = ReorderScheme::two_reorder;

  bool whole_step() const noexcept { return chunk_pages == 0; }
};

/// initial, chunked, thcon, wide128, single_copy, in that order.
const std::vector<KernelVariant>& ladder();

/// Throws std::invalid_argument for an unknown name.
const KernelVariant& variant_by_name(std::string_view name);

/// Which parts of the kernel run. A disabled reorder streams identity order
/// through aliased pages (no element traffic) and makes the numbers invalid.
struct AblationFlags {
  bool external_read = true;
  bool read_reorder = true;
  bool compute = true;
  bool write_reorder = true;
  bool external_write = true;

  /// Five Y/N characters in the order external_read, read_reorder,
  /// compute, write_reorder, external_write. Throws std::invalid_argument.
  static AblationFlags parse(std::string_view yn);
  std::string str() const;

  bool numerically_valid() const noexcept { return read_reorder && compute && write_reorder; }
  bool operator==(const AblationFlags&) const = default;
};

}  // namespace tfft::kernels
