#pragma once

#include "deconv/common.hpp"
#include "deconv/rng.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace deconv {

enum class NoiseKind
{
  laplace,
  gaussian,
  none
};

std::string to_string(NoiseKind kind);

//! Accepts "laplace", "gauss"/"gaussian" and "none".
NoiseKind parse_noise_kind(std::string_view key);

//! Known error law of sigma * eps, with eps of unit variance.
//!
//! The smoothness parameters describe the lower bound
//!   |f*(x)| >= kappa0 (x^2 + 1)^(-gamma/2) exp(-mu |x|^delta)
//! and are fixed by the kind: Laplace is ordinary smooth
//! (gamma, kappa0, mu, delta) = (2, 1/2, 0, 0), Gaussian is super smooth
//! (0, 1, 1/2, 2). Without noise everything is zero and sigma is ignored.
struct NoiseModel
{
  NoiseKind kind = NoiseKind::none;
  double sigma = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double delta = 0.0;
  double kappa0 = 1.0;

  static NoiseModel laplace(double sigma);
  static NoiseModel gaussian(double sigma);
  static NoiseModel none();
  static NoiseModel make(NoiseKind kind, double sigma);
  //! sigma = 1/sqrt(s2n), the unit-variance signal convention.
  static NoiseModel from_s2n(NoiseKind kind, double s2n);

  //! f_eps*(x) of the unscaled law (real, even).
  double cf(double x) const;

  //! f_eps*(sigma x), the factor divided out of the empirical cf.
  double scaled_cf(double x) const { return cf(effective_sigma() * x); }

  double effective_sigma() const { return kind == NoiseKind::none ? 0.0 : sigma; }

  double smoothness_bound(double x) const;
};

//! Unscaled draws of eps (multiply by sigma in the data generator).
std::vector<double> sample_noise(const NoiseModel& model, std::size_t n, Rng& rng);

} // namespace deconv
