#include <string>

#include "tfft/error.hpp"
#include "tfft/fft_core.hpp"
#include "tfft/kernels/step_plan.hpp"

namespace tfft::kernels {

Permutation StepPlan::combined() const {
  Permutation all(gather_lhs);
  all.insert(all.end(), gather_rhs.begin(), gather_rhs.end());
  return all;
}

std::vector<StepPlan> build_step_plans(std::size_t n) {
  const FftDims dims(n);
  const std::size_t half = n / 2;
  std::vector<StepPlan> plans;
  plans.reserve(dims.steps());
  for (unsigned s = 0; s < dims.steps(); ++s) {
    StepPlan plan;
    plan.step = s;
    plan.n = n;
    plan.gather_lhs.resize(half);
    plan.gather_rhs.resize(half);
    plan.twiddle_stream.resize(half);
    // Each spectra class owns n / span(s) consecutive stream positions.
    const std::size_t points_per_spectra = n / dims.span(s);
    for (std::size_t k = 0; k < half; ++k) {
      const std::size_t spectra = k / points_per_spectra;
      const std::size_t point = (k % points_per_spectra) * dims.span(s);
      const std::size_t lhs = spectra + point;
      plan.gather_lhs[k] = static_cast<std::uint32_t>(lhs);
      plan.gather_rhs[k] = static_cast<std::uint32_t>(lhs + dims.half_span(s));
      plan.twiddle_stream[k] = static_cast<std::uint32_t>(dims.twiddle_index(s, spectra));
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

StepPlan fold_bit_reversal(StepPlan plan) {
  const unsigned bits = log2_exact(plan.n);
  for (auto& i : plan.gather_lhs) i = static_cast<std::uint32_t>(reverse_bits(i, bits));
  for (auto& i : plan.gather_rhs) i = static_cast<std::uint32_t>(reverse_bits(i, bits));
  return plan;
}

Permutation invert(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] >= p.size()) throw InvalidDimension("permutation entry out of range");
    inv[p[j]] = static_cast<std::uint32_t>(j);
  }
  return inv;
}

bool is_bijection(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto i : p) {
    if (i >= p.size() || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

Permutation compose_reorder(const StepPlan& out, const StepPlan& next) {
  if (out.n != next.n) {
    throw InvalidDimension("compose_reorder: plans for n=" + std::to_string(out.n) + " and n=" +
                           std::to_string(next.n));
  }
  const Permutation from = out.combined();
  const Permutation to_position = invert(next.combined());
  Permutation composed(from.size());
  for (std::size_t j = 0; j < from.size(); ++j) composed[j] = to_position[from[j]];
  return composed;
}

}  // namespace tfft::kernels
