#include "deconv/spectral.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace deconv::spectral {

bool is_power_of_two(std::size_t n)
{
  return n >= 2 && std::has_single_bit(n);
}

ComplexGrid::ComplexGrid(std::vector<cplx> values)
  : values_(std::move(values))
{
  if (!is_power_of_two(values_.size()))
    throw size_error("transform length must be a power of two >= 2, got " +
                     std::to_string(values_.size()));
  exponent_ = static_cast<unsigned>(std::countr_zero(values_.size()));
}

ComplexGrid ComplexGrid::zeros(unsigned exponent)
{
  if (exponent < 1 || exponent > 30)
    throw size_error("exponent out of range: " + std::to_string(exponent));
  return ComplexGrid(std::vector<cplx>(std::size_t{ 1 } << exponent));
}

namespace {

// In-place iterative radix-2 transform with kernel exp(sign * 2 i pi jk/N).
void radix2(std::vector<cplx>& a, int sign)
{
  const std::size_t n = a.size();

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1)
      j ^= bit;
    j ^= bit;
    if (i < j)
      std::swap(a[i], a[j]);
  }

  // twiddles evaluated directly (no recurrence) to keep ~1 ulp accuracy
  std::vector<cplx> w(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = sign * 2.0 * pi * static_cast<double>(k) / n;
    w[k] = { std::cos(angle), std::sin(angle) };
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx t = w[k * stride] * a[start + k + half];
        a[start + k + half] = a[start + k] - t;
        a[start + k] += t;
      }
    }
  }
}

} // namespace

ComplexGrid ifft(const ComplexGrid& input)
{
  std::vector<cplx> out(input.values().begin(), input.values().end());
  radix2(out, +1);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out)
    v *= scale;
  return ComplexGrid(std::move(out));
}

ComplexGrid fft(const ComplexGrid& input)
{
  std::vector<cplx> out(input.values().begin(), input.values().end());
  radix2(out, -1);
  return ComplexGrid(std::move(out));
}

std::vector<cplx> riemann_fourier(std::span<const cplx> samples)
{
  const ComplexGrid y = ifft(ComplexGrid({ samples.begin(), samples.end() }));
  const std::size_t n = y.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = -pi * static_cast<double>(j) / n;
    out[j] = y[j] * cplx(std::cos(angle), std::sin(angle));
  }
  return out;
}

} // namespace deconv::spectral
