#include <gtest/gtest.h>

#include "tfft/error.hpp"
#include "tfft/fft_core.hpp"
#include "tfft/kernels/step_plan.hpp"

using namespace tfft;
using namespace tfft::kernels;

namespace {

// Stream order straight from the butterfly loop nest, one push per visit.
StepPlan enumerate_loop(std::size_t n, unsigned step) {
  const FftDims dims(n);
  StepPlan plan;
  plan.step = step;
  plan.n = n;
  for (std::size_t spectra = 0; spectra < dims.spectra_count(step); ++spectra) {
    for (std::size_t point = 0; point < n; point += dims.span(step)) {
      plan.gather_lhs.push_back(static_cast<std::uint32_t>(spectra + point));
      plan.gather_rhs.push_back(static_cast<std::uint32_t>(spectra + point + dims.half_span(step)));
      plan.twiddle_stream.push_back(static_cast<std::uint32_t>(dims.twiddle_index(step, spectra)));
    }
  }
  return plan;
}

}  // namespace

TEST(StepPlan, EightPointLiterals) {
  const auto plans = build_step_plans(8);
  ASSERT_EQ(plans.size(), 3U);
  EXPECT_EQ(plans[0].gather_lhs, (Permutation{0, 2, 4, 6}));
  EXPECT_EQ(plans[0].gather_rhs, (Permutation{1, 3, 5, 7}));
  EXPECT_EQ(plans[0].twiddle_stream, (Permutation{0, 0, 0, 0}));
  EXPECT_EQ(plans[1].gather_lhs, (Permutation{0, 4, 1, 5}));
  EXPECT_EQ(plans[1].gather_rhs, (Permutation{2, 6, 3, 7}));
  EXPECT_EQ(plans[1].twiddle_stream, (Permutation{0, 0, 2, 2}));
  EXPECT_EQ(plans[2].gather_lhs, (Permutation{0, 1, 2, 3}));
  EXPECT_EQ(plans[2].gather_rhs, (Permutation{4, 5, 6, 7}));
  EXPECT_EQ(plans[2].twiddle_stream, (Permutation{0, 1, 2, 3}));
}

TEST(StepPlan, MatchesLoopEnumeration) {
  for (std::size_t n = 2; n <= 16384; n *= 2) {
    const auto plans = build_step_plans(n);
    for (const auto& plan : plans) {
      const StepPlan want = enumerate_loop(n, plan.step);
      ASSERT_EQ(plan.gather_lhs, want.gather_lhs) << "n=" << n << " step=" << plan.step;
      ASSERT_EQ(plan.gather_rhs, want.gather_rhs);
      ASSERT_EQ(plan.twiddle_stream, want.twiddle_stream);
    }
  }
}

TEST(StepPlan, CombinedGathersAreBijections) {
  for (std::size_t n = 2; n <= 16384; n *= 2) {
    for (const auto& plan : build_step_plans(n)) {
      ASSERT_TRUE(is_bijection(plan.combined())) << "n=" << n << " step=" << plan.step;
      ASSERT_TRUE(is_bijection(fold_bit_reversal(plan).combined()));
      for (std::size_t k = 0; k < plan.stream_length(); ++k) {
        ASSERT_EQ(plan.gather_rhs[k], plan.gather_lhs[k] + (1U << plan.step));
        ASSERT_LT(plan.twiddle_stream[k], n / 2);
      }
    }
  }
}

TEST(StepPlan, FoldedGatherReadsBitReversedInput) {
  const auto plan = build_step_plans(16)[0];
  const auto folded = fold_bit_reversal(plan);
  for (std::size_t k = 0; k < plan.stream_length(); ++k) {
    EXPECT_EQ(folded.gather_lhs[k], reverse_bits(plan.gather_lhs[k], 4));
  }
  // 8-point: step 0 pairs natural positions (0,4), (2,6), (1,5), (3,7).
  const auto eight = fold_bit_reversal(build_step_plans(8)[0]);
  EXPECT_EQ(eight.gather_lhs, (Permutation{0, 2, 1, 3}));
  EXPECT_EQ(eight.gather_rhs, (Permutation{4, 6, 5, 7}));
}

TEST(StepPlan, RejectsBadLengths) {
  EXPECT_THROW(build_step_plans(12), InvalidDimension);
  EXPECT_THROW(build_step_plans(1), InvalidDimension);
}

TEST(ComposeReorder, AgreesWithBruteForce) {
  for (std::size_t n = 4; n <= 4096; n *= 2) {
    const auto plans = build_step_plans(n);
    for (std::size_t s = 0; s + 1 < plans.size(); ++s) {
      const Permutation composed = compose_reorder(plans[s], plans[s + 1]);
      ASSERT_TRUE(is_bijection(composed));
      const Permutation out = plans[s].combined();
      const Permutation next = plans[s + 1].combined();
      for (std::size_t j = 0; j < n; ++j) {
        // The element produced at stream slot j must be the one step s+1 reads at slot composed[j].
        ASSERT_EQ(next[composed[j]], out[j]) << "n=" << n << " s=" << s << " j=" << j;
      }
    }
  }
}

TEST(ComposeReorder, ScatterThenGatherEqualsComposedScatter) {
  const std::size_t n = 64;
  const auto plans = build_step_plans(n);
  std::vector<float> stream(n);
  for (std::size_t j = 0; j < n; ++j) stream[j] = float(j * 3 + 1);
  for (std::size_t s = 0; s + 1 < plans.size(); ++s) {
    const auto out = plans[s].combined();
    const auto next = plans[s + 1].combined();
    std::vector<float> natural(n), two_pass(n), one_pass(n);
    for (std::size_t j = 0; j < n; ++j) natural[out[j]] = stream[j];
    for (std::size_t j = 0; j < n; ++j) two_pass[j] = natural[next[j]];
    const auto composed = compose_reorder(plans[s], plans[s + 1]);
    for (std::size_t j = 0; j < n; ++j) one_pass[composed[j]] = stream[j];
    EXPECT_EQ(two_pass, one_pass) << "step " << s;
  }
}

TEST(ComposeReorder, MismatchedLengthsFail) {
  EXPECT_THROW(compose_reorder(build_step_plans(8)[0], build_step_plans(16)[1]), InvalidDimension);
}

TEST(Permutations, InvertAndBijection) {
  const Permutation p = {2, 0, 3, 1};
  EXPECT_EQ(invert(p), (Permutation{1, 3, 0, 2}));
  EXPECT_TRUE(is_bijection(p));
  EXPECT_FALSE(is_bijection({0, 0, 1}));
  EXPECT_FALSE(is_bijection({0, 5}));
}
