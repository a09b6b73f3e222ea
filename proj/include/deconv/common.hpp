#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

namespace deconv {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

//! Invalid or inconsistent run configuration (unknown keys, empty model grid, ...).
class config_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! Operation not available for the given object (e.g. pdf of a stable law).
class unsupported_operation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

} // namespace deconv
