#include "deconv/rates.hpp"

#include <cmath>

namespace deconv {

RateSpec rate_spec(DensityId density, NoiseKind noise, double sigma)
{
  RateSpec spec;
  spec.density = density;
  spec.noise = noise;
  spec.sigma = sigma;
  switch (density) {
    case DensityId::uniform:
    case DensityId::exponential:
      spec.s = 0.5;
      break;
    case DensityId::chi2:
      spec.s = 1.0;
      break;
    case DensityId::laplace:
    case DensityId::gamma:
      spec.s = 1.5;
      break;
    case DensityId::mixgamma:
      spec.s = 4.5;
      break;
    case DensityId::stable14:
      spec.s = -0.375, spec.r = 0.25, spec.b = 1.0;
      break;
    case DensityId::stable12:
      spec.s = -0.25, spec.r = 0.5, spec.b = 1.0;
      break;
    case DensityId::stable34:
      spec.s = -0.125, spec.r = 0.75, spec.b = 1.0;
      break;
    case DensityId::cauchy:
      spec.s = 0.0, spec.r = 1.0, spec.b = 1.0;
      break;
    case DensityId::gauss:
    case DensityId::mixgauss:
      spec.s = 0.25, spec.r = 2.0, spec.b = 0.5;
      break;
    case DensityId::fejer1:
    case DensityId::fejer5:
    case DensityId::fejer10:
    case DensityId::fejer13:
      spec.compact_spectrum = true;
      break;
  }
  if (noise == NoiseKind::none) {
    return spec;
  }
  const auto model = NoiseModel::make(noise, sigma);
  spec.gamma = model.gamma;
  spec.mu = model.mu;
  spec.delta = model.delta;
  if (noise == NoiseKind::gaussian && !spec.compact_spectrum) {
    if (!(sigma > 0.0))
      throw config_error("Gaussian-noise rates need sigma > 0");
    const bool special = density == DensityId::gauss || density == DensityId::mixgauss;
    if (!special && spec.r > 0.5 * spec.delta)
      throw config_error("no closed-form rate for " + deconv::density(density).name + " with Gaussian noise");
  }
  return spec;
}

double theoretical_rate(const RateSpec& spec, double n)
{
  if (!(n >= 3.0))
    throw std::invalid_argument("rates need n >= 3");
  const double ln = std::log(n);
  if (spec.compact_spectrum)
    return 1.0 / n;
  const double s = spec.s, r = spec.r, b = spec.b;
  switch (spec.noise) {
    case NoiseKind::laplace:
    case NoiseKind::none: {
      const double g = spec.noise == NoiseKind::none ? 0.0 : spec.gamma;
      if (r == 0.0)
        return std::pow(n, -2.0 * s / (2.0 * s + 2.0 * g + 1.0));
      return std::pow(ln, (2.0 * g + 1.0) / r) / n;
    }
    case NoiseKind::gaussian: {
      const double s2 = spec.sigma * spec.sigma;
      if (spec.density == DensityId::gauss || spec.density == DensityId::mixgauss)
        return std::pow(ln, -0.5 * (s2 - 1.0) / (s2 + 1.0)) * std::pow(n, -1.0 / (s2 + 1.0));
      const double d = spec.delta;
      const double base = std::pow(ln, -2.0 * s / d);
      if (r == 0.0)
        return base;
      const double scale = 2.0 * spec.mu * std::pow(spec.sigma, d);
      return base * std::exp(-2.0 * b * std::pow(ln / scale, r / d));
    }
  }
  return 0.0;
}

std::vector<AbacusPoint> abacus(const RateSpec& spec,
                                std::span<const double> n_values,
                                std::span<const double> offsets)
{
  if (n_values.empty())
    throw std::invalid_argument("abacus needs at least one n");
  std::vector<AbacusPoint> out;
  out.reserve(n_values.size() * offsets.size());
  for (double off : offsets)
    for (double n : n_values)
      out.push_back({ off, n, std::log(n), std::log(theoretical_rate(spec, n)) + off });
  return out;
}

} // namespace deconv
