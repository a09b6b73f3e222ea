#pragma once

#include "deconv/common.hpp"

#include <cstddef>
#include <span>
#include <vector>

//! Discrete Fourier machinery: the inverse transform with 1/N scaling and
//! the midpoint Riemann sums of oscillatory integrals on [-1, 1].
namespace deconv::spectral {

//! Raised for transforms of a length that is not a power of two.
class size_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

bool is_power_of_two(std::size_t n);

//! Complex vector whose length is N = 2^M with M >= 1.
class ComplexGrid
{
public:
  explicit ComplexGrid(std::vector<cplx> values);

  static ComplexGrid zeros(unsigned exponent);

  std::size_t size() const { return values_.size(); }
  unsigned exponent() const { return exponent_; }

  std::span<const cplx> values() const { return values_; }
  const cplx& operator[](std::size_t k) const { return values_[k]; }
  cplx& operator[](std::size_t k) { return values_[k]; }

  std::vector<cplx> release() && { return std::move(values_); }

private:
  std::vector<cplx> values_;
  unsigned exponent_ = 0;
};

//! Y(j) = (1/N) sum_k X(k) exp(+2 i pi j k / N), j, k = 0..N-1.
ComplexGrid ifft(const ComplexGrid& input);

//! Unscaled forward transform, sum_k X(k) exp(-2 i pi j k / N); inverse of ifft.
ComplexGrid fft(const ComplexGrid& input);

//! For samples u_k = u((-1 + 2k)/N), returns for j = 0..N-1
//!   (1/N) sum_k exp(i j (-pi + 2 k pi) / N) u_k,
//! the midpoint approximation of (1/2) int_{-1}^{1} exp(i pi j x) u(x) dx when
//! u is extended 2-periodically.
std::vector<cplx> riemann_fourier(std::span<const cplx> samples);

} // namespace deconv::spectral
