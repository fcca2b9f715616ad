#include "tfft/fft_core.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <string>
#include <utility>

#include "tfft/error.hpp"

namespace tfft {
namespace {

using cdouble = std::complex<double>;

// Exact roots of unity for an n-point DFT: roots[m] = e^(-2*pi*i*m/n).
std::vector<cdouble> unit_roots(std::size_t n) {
  std::vector<cdouble> roots(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    roots[m] = {std::cos(angle), std::sin(angle)};
  }
  return roots;
}

// In-place strided DFT over `count` elements starting at `first`.
void dft_strided(std::vector<cdouble>& data, std::size_t first, std::size_t count, std::size_t stride,
                 const std::vector<cdouble>& roots) {
  std::vector<cdouble> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    cdouble acc{0.0, 0.0};
    for (std::size_t j = 0; j < count; ++j) {
      acc += data[first + j * stride] * roots[(k * j) % count];
    }
    out[k] = acc;
  }
  for (std::size_t k = 0; k < count; ++k) {
    data[first + k * stride] = out[k];
  }
}

ComplexBuffer round_to_fp32(const std::vector<cdouble>& values) {
  ComplexBuffer out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.re()[i] = static_cast<float>(values[i].real());
    out.im()[i] = static_cast<float>(values[i].imag());
  }
  return out;
}

std::vector<cdouble> widen(const ComplexBuffer& in) {
  std::vector<cdouble> values(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    values[i] = {in.re()[i], in.im()[i]};
  }
  return values;
}

ComplexBuffer conjugate(ComplexBuffer x) {
  for (float& v : x.im()) v = -v;
  return x;
}

}  // namespace

ComplexBuffer::ComplexBuffer(std::vector<float> re, std::vector<float> im)
    : re_(std::move(re)), im_(std::move(im)) {
  if (re_.size() != im_.size()) {
    throw InvalidDimension("complex buffer planes differ in length: " + std::to_string(re_.size()) + " vs " +
                           std::to_string(im_.size()));
  }
}

bool bitwise_equal(const ComplexBuffer& a, const ComplexBuffer& b) {
  if (a.size() != b.size()) return false;
  const std::size_t bytes = a.size() * sizeof(float);
  return std::memcmp(a.re().data(), b.re().data(), bytes) == 0 &&
         std::memcmp(a.im().data(), b.im().data(), bytes) == 0;
}

double relative_l2_error(const ComplexBuffer& actual, const ComplexBuffer& expected) {
  if (actual.size() != expected.size()) {
    throw InvalidDimension("relative_l2_error: length mismatch");
  }
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double dr = static_cast<double>(actual.re()[i]) - expected.re()[i];
    const double di = static_cast<double>(actual.im()[i]) - expected.im()[i];
    diff += dr * dr + di * di;
    norm += static_cast<double>(expected.re()[i]) * expected.re()[i] +
            static_cast<double>(expected.im()[i]) * expected.im()[i];
  }
  if (norm == 0.0) return std::sqrt(diff);
  return std::sqrt(diff / norm);
}

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

unsigned log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw InvalidDimension("length " + std::to_string(n) + " is not a power of two");
  }
  return static_cast<unsigned>(std::countr_zero(n));
}

std::size_t reverse_bits(std::size_t value, unsigned bits) noexcept {
  std::size_t reversed = 0;
  for (unsigned b = 0; b < bits; ++b) {
    reversed = (reversed << 1U) | (value & 1U);
    value >>= 1U;
  }
  return reversed;
}

FftDims::FftDims(std::size_t n) : n_(n), num_steps_index_(0) {
  if (n < 2 || !is_power_of_two(n)) {
    throw InvalidDimension("FFT length must be a power of two >= 2, got " + std::to_string(n));
  }
  num_steps_index_ = log2_exact(n) - 1;
}

ComplexBuffer dft_oracle(const ComplexBuffer& input) {
  const std::size_t n = input.size();
  if (n == 0) return {};
  std::vector<cdouble> values = widen(input);
  dft_strided(values, 0, n, 1, unit_roots(n));
  return round_to_fp32(values);
}

TwiddleTable twiddle_table(std::size_t n) {
  const FftDims dims(n);
  const std::size_t half = dims.n() / 2;
  TwiddleTable table{std::vector<float>(half), std::vector<float>(half)};
  for (std::size_t k = 0; k < half; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    table.re[k] = static_cast<float>(std::cos(angle));
    table.im[k] = static_cast<float>(std::sin(angle));
  }
  table.re[0] = 1.0F;
  table.im[0] = 0.0F;
  return table;
}

ComplexBuffer bit_reverse_permute(const ComplexBuffer& input) {
  const unsigned bits = log2_exact(input.size());
  ComplexBuffer out(input.size());
  for (std::size_t j = 0; j < input.size(); ++j) {
    const std::size_t src = reverse_bits(j, bits);
    out.re()[j] = input.re()[src];
    out.im()[j] = input.im()[src];
  }
  return out;
}

ComplexBuffer fft_reference(const ComplexBuffer& input) {
  const FftDims dims(input.size());
  const TwiddleTable twiddles = twiddle_table(dims.n());
  ComplexBuffer data = bit_reverse_permute(input);
  std::span<float> re = data.re();
  std::span<float> im = data.im();

  for (unsigned step = 0; step <= dims.num_steps_index(); ++step) {
    const std::size_t matching_second_point = dims.half_span(step);
    const std::size_t increment = dims.span(step);
    for (std::size_t spectra = 0; spectra < dims.spectra_count(step); ++spectra) {
      const std::size_t tw = dims.twiddle_index(step, spectra);
      const float wr = twiddles.re[tw];
      const float wi = twiddles.im[tw];
      for (std::size_t point = 0; point < dims.n(); point += increment) {
        const std::size_t d0 = spectra + point;
        const std::size_t d1 = d0 + matching_second_point;
        const float f0 = (re[d1] * wr) - (im[d1] * wi);
        const float f1 = (re[d1] * wi) + (im[d1] * wr);
        re[d1] = re[d0] - f0;
        im[d1] = im[d0] - f1;
        re[d0] = re[d0] + f0;
        im[d0] = im[d0] + f1;
      }
    }
  }
  return data;
}

ComplexBuffer ifft_reference(const ComplexBuffer& input) {
  ComplexBuffer out = conjugate(fft_reference(conjugate(input)));
  const float scale = 1.0F / static_cast<float>(out.size());
  for (float& v : out.re()) v *= scale;
  for (float& v : out.im()) v *= scale;
  return out;
}

ComplexBuffer dft2d_oracle(const ComplexBuffer& input, std::size_t rows, std::size_t cols) {
  if (rows * cols != input.size() || rows == 0 || cols == 0) {
    throw InvalidDimension("dft2d_oracle: " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " does not match " + std::to_string(input.size()) + " elements");
  }
  std::vector<cdouble> values = widen(input);
  const auto row_roots = unit_roots(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    dft_strided(values, r * cols, cols, 1, row_roots);
  }
  const auto col_roots = unit_roots(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    dft_strided(values, c, rows, cols, col_roots);
  }
  return round_to_fp32(values);
}

}  // namespace tfft
