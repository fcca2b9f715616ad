#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tfft::kernels {

/// Index map: position -> index. Permutations in this module are always
/// bijections on [0, size).
using Permutation = std::vector<std::uint32_t>;

/// Stream order for one FFT step.
///
/// Position k of the step's operand streams pairs the natural-order elements
/// gather_lhs[k] and gather_rhs[k] = gather_lhs[k] + 2^step, using twiddle
/// table entry twiddle_stream[k]. Positions follow the butterfly loop order:
/// spectra outer, point inner.
struct StepPlan {
  unsigned step = 0;
  std::size_t n = 0;
  Permutation gather_lhs;
  Permutation gather_rhs;
  Permutation twiddle_stream;  // not a permutation: table indices repeat

  std::size_t stream_length() const noexcept { return gather_lhs.size(); }

  /// The two gathers as one map over [0, n): positions [0, n/2) are the LHS
  /// stream, positions [n/2, n) the RHS stream.
  Permutation combined() const;
};

/// log2(n) plans. Throws InvalidDimension unless n is a power of two >= 2.
std::vector<StepPlan> build_step_plans(std::size_t n);

/// Same plan with the input bit reversal folded into the gathers, so step 0
/// can read straight from natural-order input.
StepPlan fold_bit_reversal(StepPlan plan);

/// Position map that takes results of `out` (in its combined stream order)
/// directly to their positions in `next`'s combined stream order:
/// result[j] = inverse(next.combined())[out.combined()[j]].
/// Throws InvalidDimension if the plans are for different n.
Permutation compose_reorder(const StepPlan& out, const StepPlan& next);

Permutation invert(const Permutation& p);
bool is_bijection(const Permutation& p);

}  // namespace tfft::kernels
