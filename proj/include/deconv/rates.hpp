#pragma once

#include "deconv/densities.hpp"
#include "deconv/noise.hpp"

#include <span>
#include <vector>

namespace deconv {

//! Bias convention: (1/2pi) int_{|x|>=l} |g*|^2 <= A (l^2 + 1)^(-s) exp(-2 b l^r).
struct RateSpec
{
  DensityId density = DensityId::gauss;
  NoiseKind noise = NoiseKind::none;
  double sigma = 0.0;
  double s = 0.0;
  double r = 0.0;
  double b = 0.0;
  bool compact_spectrum = false; //!< Fejer laws: no bias, parametric rate
  double gamma = 0.0;
  double mu = 0.0;
  double delta = 0.0;
};

//! Throws config_error for pairs without a closed-form rate.
RateSpec rate_spec(DensityId density, NoiseKind noise, double sigma);

//! sigma for a single abacus drawn over several noise levels (s2n = 4).
inline constexpr double abacus_default_s2n = 4.0;

//! Order of the MISE of the adaptive estimator, up to a constant. n >= 3.
double theoretical_rate(const RateSpec& spec, double n);

struct AbacusPoint
{
  double offset;
  double n;
  double log_n;
  double log_rate; //!< ln rate + offset
};

std::vector<AbacusPoint> abacus(const RateSpec& spec,
                                std::span<const double> n_values,
                                std::span<const double> offsets);

} // namespace deconv
