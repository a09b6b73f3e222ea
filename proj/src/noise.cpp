#include "deconv/noise.hpp"

#include <cmath>
#include <random>

namespace deconv {

std::string to_string(NoiseKind kind)
{
  switch (kind) {
    case NoiseKind::laplace:
      return "laplace";
    case NoiseKind::gaussian:
      return "gauss";
    case NoiseKind::none:
      return "none";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view key)
{
  if (key == "laplace")
    return NoiseKind::laplace;
  if (key == "gauss" || key == "gaussian")
    return NoiseKind::gaussian;
  if (key == "none")
    return NoiseKind::none;
  throw config_error("unknown noise kind '" + std::string(key) + "'");
}

NoiseModel NoiseModel::laplace(double sigma)
{
  if (!(sigma >= 0.0))
    throw std::invalid_argument("noise level must be nonnegative");
  return { NoiseKind::laplace, sigma, 2.0, 0.0, 0.0, 0.5 };
}

NoiseModel NoiseModel::gaussian(double sigma)
{
  if (!(sigma >= 0.0))
    throw std::invalid_argument("noise level must be nonnegative");
  return { NoiseKind::gaussian, sigma, 0.0, 0.5, 2.0, 1.0 };
}

NoiseModel NoiseModel::none()
{
  return { NoiseKind::none, 0.0, 0.0, 0.0, 0.0, 1.0 };
}

NoiseModel NoiseModel::make(NoiseKind kind, double sigma)
{
  switch (kind) {
    case NoiseKind::laplace:
      return laplace(sigma);
    case NoiseKind::gaussian:
      return gaussian(sigma);
    case NoiseKind::none:
      break;
  }
  return none();
}

NoiseModel NoiseModel::from_s2n(NoiseKind kind, double s2n)
{
  if (!(s2n > 0.0))
    throw std::invalid_argument("s2n must be positive");
  return make(kind, 1.0 / std::sqrt(s2n));
}

double NoiseModel::cf(double x) const
{
  switch (kind) {
    case NoiseKind::laplace:
      return 1.0 / (1.0 + 0.5 * x * x);
    case NoiseKind::gaussian:
      return std::exp(-0.5 * x * x);
    case NoiseKind::none:
      break;
  }
  return 1.0;
}

double NoiseModel::smoothness_bound(double x) const
{
  return kappa0 * std::pow(x * x + 1.0, -0.5 * gamma) *
         std::exp(-mu * std::pow(std::abs(x), delta));
}

std::vector<double> sample_noise(const NoiseModel& model, std::size_t n, Rng& rng)
{
  std::vector<double> out(n, 0.0);
  switch (model.kind) {
    case NoiseKind::laplace: {
      // sign * Exp(rate sqrt 2) has density exp(-sqrt2 |x|)/sqrt2
      std::exponential_distribution<double> expo(std::sqrt(2.0));
      for (auto& v : out) {
        const double sign = (rng() >> 63) ? 1.0 : -1.0;
        v = sign * expo(rng);
      }
      break;
    }
    case NoiseKind::gaussian: {
      std::normal_distribution<double> normal;
      for (auto& v : out)
        v = normal(rng);
      break;
    }
    case NoiseKind::none:
      break;
  }
  return out;
}

} // namespace deconv
