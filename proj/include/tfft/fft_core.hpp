#pragma once

// Ground-truth numerics: the O(N^2) DFT oracle, the iterative radix-2
// reference FFT over planar FP32 data, and the helpers they share.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tfft {

/// Planar FP32 complex data: one real plane and one imaginary plane of equal length.
class ComplexBuffer {
 public:
  ComplexBuffer() = default;
  explicit ComplexBuffer(std::size_t n) : re_(n, 0.0F), im_(n, 0.0F) {}
  /// Throws InvalidDimension when the planes differ in length.
  ComplexBuffer(std::vector<float> re, std::vector<float> im);

  std::size_t size() const noexcept { return re_.size(); }
  bool empty() const noexcept { return re_.empty(); }

  std::span<float> re() noexcept { return re_; }
  std::span<const float> re() const noexcept { return re_; }
  std::span<float> im() noexcept { return im_; }
  std::span<const float> im() const noexcept { return im_; }

 private:
  std::vector<float> re_;
  std::vector<float> im_;
};

/// True when both buffers have the same length and identical bit patterns.
bool bitwise_equal(const ComplexBuffer& a, const ComplexBuffer& b);

/// ||actual - expected||_2 / ||expected||_2, accumulated in double.
/// Returns the absolute norm of the difference when `expected` is all zero.
double relative_l2_error(const ComplexBuffer& actual, const ComplexBuffer& expected);

/// Unit roots e^(-2*pi*i*k/n) for k in [0, n/2), rounded to FP32.
struct TwiddleTable {
  std::vector<float> re;
  std::vector<float> im;

  std::size_t size() const noexcept { return re.size(); }
};

bool is_power_of_two(std::size_t n) noexcept;

/// log2(n) for a power of two; throws InvalidDimension otherwise.
unsigned log2_exact(std::size_t n);

/// Reverses the low `bits` bits of `value`.
std::size_t reverse_bits(std::size_t value, unsigned bits) noexcept;

/// Per-step loop extents of the radix-2 schedule.
///
/// Steps are numbered 0..num_steps_index inclusive, so a domain of n
/// elements runs log2(n) steps. In step s the second butterfly operand sits
/// half_span(s) = 2^s after the first, groups start every span(s) = 2^(s+1)
/// elements, and spectra_count(s) = 2^s twiddle classes are visited.
class FftDims {
 public:
  /// Throws InvalidDimension unless n is a power of two >= 2.
  explicit FftDims(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  unsigned num_steps_index() const noexcept { return num_steps_index_; }
  unsigned steps() const noexcept { return num_steps_index_ + 1; }

  std::size_t half_span(unsigned step) const noexcept { return std::size_t{1} << step; }
  std::size_t span(unsigned step) const noexcept { return std::size_t{2} << step; }
  std::size_t spectra_count(unsigned step) const noexcept { return std::size_t{1} << step; }
  std::size_t twiddle_index(unsigned step, std::size_t spectra) const noexcept {
    return spectra << (num_steps_index_ - step);
  }

 private:
  std::size_t n_;
  unsigned num_steps_index_;
};

/// Direct O(N^2) DFT with a negative exponent, evaluated in double and
/// rounded to FP32. Accepts any length.
ComplexBuffer dft_oracle(const ComplexBuffer& input);

/// Twiddle factors for an n-point transform. Entry 0 is exactly (1, 0).
TwiddleTable twiddle_table(std::size_t n);

/// output[j] = input[reverse_bits(j, log2 N)].
ComplexBuffer bit_reverse_permute(const ComplexBuffer& input);

/// Decimation-in-time radix-2 FFT: bit-reversed input, natural-order output,
/// butterflies in FP32 in exactly the (step, spectra, point) loop order.
ComplexBuffer fft_reference(const ComplexBuffer& input);

/// conj(fft(conj(x))) / N.
ComplexBuffer ifft_reference(const ComplexBuffer& input);

/// Row-major 2D DFT: every row, then every column of the intermediate,
/// all in double. Throws InvalidDimension if rows * cols != input.size().
ComplexBuffer dft2d_oracle(const ComplexBuffer& input, std::size_t rows, std::size_t cols);

}  // namespace tfft
