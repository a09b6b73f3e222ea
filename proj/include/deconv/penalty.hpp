#pragma once

#include "deconv/common.hpp"
#include "deconv/noise.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace deconv {

enum class PenaltyFamily
{
  new_laplace,
  new_gaussian,
  old_laplace,
  old_gaussian
};

std::string to_string(PenaltyFamily family);
PenaltyFamily parse_penalty_family(std::string_view key);

//! Calibrated family matching a noise law; NoNoise maps to the Laplace
//! shape (both shapes coincide at sigma = 0).
PenaltyFamily penalty_family_for(NoiseKind kind, bool old = false);

//! Raised when the (1 - 1/s2n)^2 factor is active and s2n <= 1.
class penalty_domain_error : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

struct PenaltySpec
{
  PenaltyFamily family = PenaltyFamily::new_laplace;
  std::size_t n = 1;
  double s2n = 1.0e4;
  double sigma = 0.0;
  double delta_grid = 0.1;
  double ell_max = 10.0 * pi;
  double pen_max = 5.0;
  //! false: zeta(l) = max(l, pi), the unsmoothed variant
  bool smooth_zeta = true;
  //! apply (1 - 1/s2n)^2 also when sigma == 0
  bool prefactor_at_zero_sigma = false;
};

//! pi 1{l<4} + (l-2)^2/(4(pi-2)) 1{2<=l<4} + l 1{l>=4}, indicators taken literally
//! (they overlap on [2, 4), which gives a small downward jump at l = 4).
double zeta(double ell);

//! int_0^1 exp((s x)^2) dx by the 128-node Gauss-Legendre rule; +inf once
//! s^2 > 700.
double gaussian_penalty_integral(double s);

double pen_laplace(const PenaltySpec& spec, double ell);
double pen_gaussian(const PenaltySpec& spec, double ell);
double pen_old(const PenaltySpec& spec, double ell);

//! Dispatch on spec.family.
double penalty(const PenaltySpec& spec, double ell);

struct ModelGrid
{
  std::vector<double> ells;
  std::vector<double> pens;

  std::size_t size() const { return ells.size(); }
};

//! l_m = m * Delta for m = 1, 2, ... while l_m <= ell_max and
//! pen(l_m) <= pen_max. Throws config_error if even m = 1 is excluded.
ModelGrid model_grid(const PenaltySpec& spec);

} // namespace deconv
