#pragma once

#include "deconv/common.hpp"
#include "deconv/rng.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deconv {

//! The sixteen test laws, in table order.
enum class DensityId
{
  uniform,    // a
  exponential,
  chi2,
  laplace,
  gamma,
  mixgamma,
  stable14,
  stable12,
  stable34,
  cauchy,
  gauss,
  mixgauss,
  fejer1,
  fejer5,
  fejer10,
  fejer13     // p
};

struct TestDensity
{
  DensityId id;
  char letter;
  std::string name;
  double lo; //!< E1 interval
  double hi;
  bool has_pdf;
  bool has_finite_variance;
  bool normalized_unit_variance;
  double fejer_p = 0.0;     //!< scale of the triangular cf, 0 otherwise
  double stable_index = 0.0; //!< r of exp(-|x|^r), 0 otherwise
};

const std::vector<TestDensity>& all_densities();
const TestDensity& density(DensityId id);

//! By name ("uniform", "stable12", "fejer5", ...) or table letter "a".."p".
const TestDensity& parse_density(std::string_view key);

std::vector<double> sample(const TestDensity& d, std::size_t n, Rng& rng);

//! Throws unsupported_operation for the stable laws.
double pdf(const TestDensity& d, double x);

cplx cf(const TestDensity& d, double x);

//! int_{|x| >= ell} |g*(x)|^2 dx.
double tail_energy(const TestDensity& d, double ell);

//! Si(x) = int_0^x sin(t)/t dt.
double sine_integral(double x);

} // namespace deconv
