#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "tfft/error.hpp"
#include "tfft/fft_core.hpp"

using namespace tfft;

namespace {

ComplexBuffer random_buffer(std::size_t n, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<float> dist(-1.0F, 1.0F);
  ComplexBuffer b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b.re()[i] = dist(gen);
    b.im()[i] = dist(gen);
  }
  return b;
}

ComplexBuffer from_real(std::vector<float> re) {
  std::vector<float> im(re.size(), 0.0F);
  return ComplexBuffer(std::move(re), std::move(im));
}

double energy(const ComplexBuffer& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) e += double(b.re()[i]) * b.re()[i] + double(b.im()[i]) * b.im()[i];
  return e;
}

void expect_near(const ComplexBuffer& b, const std::vector<std::complex<double>>& want, double tol) {
  ASSERT_EQ(b.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(b.re()[i], want[i].real(), tol) << "re[" << i << "]";
    EXPECT_NEAR(b.im()[i], want[i].imag(), tol) << "im[" << i << "]";
  }
}

}  // namespace

TEST(DftOracle, AlternatingOnes) {
  expect_near(dft_oracle(from_real({0, 1, 0, 1})), {{2, 0}, {0, 0}, {-2, 0}, {0, 0}}, 1e-6);
}

TEST(DftOracle, Ramp) {
  expect_near(dft_oracle(from_real({1, 2, 3, 4})), {{10, 0}, {-2, 2}, {-2, 0}, {-2, -2}}, 1e-6);
}

TEST(DftOracle, AcceptsNonPowerOfTwo) {
  // Sum of cube roots of unity vanishes.
  const auto out = dft_oracle(from_real({1, 1, 1}));
  expect_near(out, {{3, 0}, {0, 0}, {0, 0}}, 1e-6);
}

TEST(DftOracle, DeltaIsFlat) {
  ComplexBuffer x(16);
  x.re()[0] = 1.0F;
  const auto y = dft_oracle(x);
  for (std::size_t k = 0; k < 16; ++k) {
    EXPECT_EQ(y.re()[k], 1.0F);
    EXPECT_EQ(y.im()[k], 0.0F);
  }
}

TEST(Twiddles, UnitCircleAndFirstEntry) {
  const auto t = twiddle_table(1024);
  ASSERT_EQ(t.size(), 512U);
  EXPECT_EQ(t.re[0], 1.0F);
  EXPECT_EQ(t.im[0], 0.0F);
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_NEAR(std::hypot(double(t.re[k]), double(t.im[k])), 1.0, 1e-6);
  }
  EXPECT_NEAR(t.re[256], 0.0, 1e-7);
  EXPECT_NEAR(t.im[256], -1.0, 1e-7);
}

TEST(BitReverse, EightPoint) {
  const std::size_t want[] = {0, 4, 2, 6, 1, 5, 3, 7};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(reverse_bits(i, 3), want[i]);
}

TEST(BitReverse, Involution) {
  for (unsigned bits = 1; bits <= 14; ++bits) {
    for (std::size_t i = 0; i < (std::size_t{1} << bits); i += 7) EXPECT_EQ(reverse_bits(reverse_bits(i, bits), bits), i);
  }
  const auto x = random_buffer(256, 3);
  EXPECT_TRUE(bitwise_equal(bit_reverse_permute(bit_reverse_permute(x)), x));
}

TEST(Dims, RejectsBadLengths) {
  for (std::size_t n : {0UL, 1UL, 3UL, 12UL, 1000UL}) EXPECT_THROW(FftDims{n}, InvalidDimension) << n;
  EXPECT_THROW(fft_reference(ComplexBuffer(12)), InvalidDimension);
  EXPECT_THROW(ComplexBuffer({1.0F, 2.0F}, {1.0F}), InvalidDimension);
}

TEST(Dims, LoopExtents) {
  const FftDims d(16);
  EXPECT_EQ(d.steps(), 4U);
  EXPECT_EQ(d.num_steps_index(), 3U);
  EXPECT_EQ(d.half_span(2), 4U);
  EXPECT_EQ(d.span(2), 8U);
  EXPECT_EQ(d.twiddle_index(1, 1), 4U);
  EXPECT_EQ(d.twiddle_index(3, 5), 5U);
}

TEST(Reference, AlternatingOnesExact) {
  const auto y = fft_reference(from_real({0, 1, 0, 1}));
  const float re[] = {2, 0, -2, 0};
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(y.re()[k], re[k]);
    EXPECT_EQ(y.im()[k], 0.0F);
  }
}

TEST(Reference, MatchesOracleAcrossSizes) {
  for (std::size_t n = 2; n <= 4096; n *= 2) {
    const auto x = random_buffer(n, static_cast<std::uint32_t>(n));
    const double err = relative_l2_error(fft_reference(x), dft_oracle(x));
    EXPECT_LT(err, n <= 64 ? 1e-5 : 1e-3) << "n=" << n;
  }
}

TEST(Reference, ConstantGoesToDc) {
  ComplexBuffer x(64);
  for (auto& v : x.re()) v = 1.0F;
  const auto y = fft_reference(x);
  EXPECT_EQ(y.re()[0], 64.0F);
  for (std::size_t k = 1; k < 64; ++k) {
    EXPECT_NEAR(y.re()[k], 0.0, 1e-5);
    EXPECT_NEAR(y.im()[k], 0.0, 1e-5);
  }
}

class ReferenceProperties : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(ReferenceProperties, Parseval) {
  const std::size_t n = 512;
  const auto x = random_buffer(n, GetParam());
  EXPECT_NEAR(energy(fft_reference(x)) / (n * energy(x)), 1.0, 1e-5);
}

TEST_P(ReferenceProperties, Linearity) {
  const std::size_t n = 256;
  const auto a = random_buffer(n, GetParam());
  const auto b = random_buffer(n, GetParam() + 1000);
  ComplexBuffer sum(n);
  for (std::size_t i = 0; i < n; ++i) {
    sum.re()[i] = 2.0F * a.re()[i] - b.re()[i];
    sum.im()[i] = 2.0F * a.im()[i] - b.im()[i];
  }
  const auto fa = fft_reference(a);
  const auto fb = fft_reference(b);
  ComplexBuffer combined(n);
  for (std::size_t i = 0; i < n; ++i) {
    combined.re()[i] = 2.0F * fa.re()[i] - fb.re()[i];
    combined.im()[i] = 2.0F * fa.im()[i] - fb.im()[i];
  }
  EXPECT_LT(relative_l2_error(fft_reference(sum), combined), 1e-5);
}

TEST_P(ReferenceProperties, RoundTrip) {
  const auto x = random_buffer(1024, GetParam());
  EXPECT_LT(relative_l2_error(ifft_reference(fft_reference(x)), x), 1e-5);
}

TEST_P(ReferenceProperties, Deterministic) {
  const auto x = random_buffer(2048, GetParam());
  EXPECT_TRUE(bitwise_equal(fft_reference(x), fft_reference(x)));
}

INSTANTIATE_TEST_SUITE_P(Seeds, ReferenceProperties, ::testing::Range<std::uint32_t>(1, 21));

TEST(Dft2dOracle, DeltaAndConstant) {
  ComplexBuffer delta(8 * 4);
  delta.re()[0] = 1.0F;
  const auto flat = dft2d_oracle(delta, 8, 4);
  for (std::size_t i = 0; i < flat.size(); ++i) EXPECT_EQ(flat.re()[i], 1.0F);

  ComplexBuffer constant(8 * 4);
  for (auto& v : constant.re()) v = 1.0F;
  const auto dc = dft2d_oracle(constant, 8, 4);
  EXPECT_NEAR(dc.re()[0], 32.0, 1e-5);
  for (std::size_t i = 1; i < dc.size(); ++i) EXPECT_NEAR(std::abs(dc.re()[i]) + std::abs(dc.im()[i]), 0.0, 1e-5);
  EXPECT_THROW(dft2d_oracle(constant, 5, 4), InvalidDimension);
}

TEST(Dft2dOracle, SeparableRowsThenColumns) {
  const auto x = random_buffer(16 * 8, 11);
  const auto y = dft2d_oracle(x, 16, 8);
  // Column 3 of the row-transformed matrix, transformed again.
  ComplexBuffer rows_done(16 * 8);
  for (std::size_t r = 0; r < 16; ++r) {
    ComplexBuffer row(8);
    for (std::size_t c = 0; c < 8; ++c) {
      row.re()[c] = x.re()[r * 8 + c];
      row.im()[c] = x.im()[r * 8 + c];
    }
    const auto fr = dft_oracle(row);
    for (std::size_t c = 0; c < 8; ++c) {
      rows_done.re()[r * 8 + c] = fr.re()[c];
      rows_done.im()[r * 8 + c] = fr.im()[c];
    }
  }
  ComplexBuffer col(16);
  for (std::size_t r = 0; r < 16; ++r) {
    col.re()[r] = rows_done.re()[r * 8 + 3];
    col.im()[r] = rows_done.im()[r * 8 + 3];
  }
  const auto fc = dft_oracle(col);
  for (std::size_t r = 0; r < 16; ++r) {
    EXPECT_NEAR(y.re()[r * 8 + 3], fc.re()[r], 1e-4);
    EXPECT_NEAR(y.im()[r * 8 + 3], fc.im()[r], 1e-4);
  }
}
