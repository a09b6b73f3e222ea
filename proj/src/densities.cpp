#include "deconv/densities.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace deconv {

namespace {

using boost::math::quadrature::gauss_kronrod;

const double sqrt2 = std::sqrt(2.0);
const double sqrt3 = std::sqrt(3.0);
const double sqrt6 = std::sqrt(6.0);
const double gamma_scale = std::sqrt(8.0 / 9.0);
const double mixgamma_scale = std::sqrt(5.48);

std::vector<TestDensity> make_table()
{
  return {
    { DensityId::uniform, 'a', "uniform", -5, 5, true, true, true },
    { DensityId::exponential, 'b', "exponential", -5, 10, true, true, true },
    { DensityId::chi2, 'c', "chi2", -1, 16, true, true, true },
    { DensityId::laplace, 'd', "laplace", -5, 5, true, true, true },
    { DensityId::gamma, 'e', "gamma", -5, 25, true, true, true },
    { DensityId::mixgamma, 'f', "mixgamma", -1.5, 26, true, true, false },
    { DensityId::stable14, 'g', "stable14", -10, 10, false, false, false, 0.0, 0.25 },
    { DensityId::stable12, 'h', "stable12", -10, 10, false, false, false, 0.0, 0.5 },
    { DensityId::stable34, 'i', "stable34", -10, 10, false, false, false, 0.0, 0.75 },
    { DensityId::cauchy, 'j', "cauchy", -10, 10, true, false, false },
    { DensityId::gauss, 'k', "gauss", -4, 4, true, true, true },
    { DensityId::mixgauss, 'l', "mixgauss", -8, 7, true, true, false },
    { DensityId::fejer1, 'm', "fejer1", -10, 10, true, false, false, 1.0 },
    { DensityId::fejer5, 'n', "fejer5", -10, 10, true, false, false, 5.0 },
    { DensityId::fejer10, 'o', "fejer10", -10, 10, true, false, false, 10.0 },
    { DensityId::fejer13, 'p', "fejer13", -10, 10, true, false, false, 13.0 },
  };
}

double random_sign(Rng& rng)
{
  return (rng() >> 63) ? -1.0 : 1.0;
}

// symmetric alpha-stable with cf exp(-|x|^alpha), Chambers-Mallows-Stuck
double draw_stable(double alpha, Rng& rng)
{
  std::exponential_distribution<double> expo(1.0);
  const double V = pi * (uniform01(rng) - 0.5);
  double W = expo(rng);
  while (W == 0.0)
    W = expo(rng);
  return std::sin(alpha * V) / std::pow(std::cos(V), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * V) / W, (1.0 - alpha) / alpha);
}

double fejer_pdf(double p, double x)
{
  const double h = 0.5 * p * x;
  if (std::abs(h) < 1e-4)
    return p / (2.0 * pi) * (1.0 - h * h / 3.0);
  const double s = std::sin(h);
  return 2.0 * s * s / (p * pi * x * x);
}

// rejection from the envelope min(p/(2 pi), 2/(p pi x^2)), half its mass on
// [-2/p, 2/p] and half on the Pareto tails
double draw_fejer(double p, Rng& rng)
{
  const double edge = 2.0 / p;
  for (;;) {
    double x, env;
    if (uniform01(rng) < 0.5) {
      x = edge * (2.0 * uniform01(rng) - 1.0);
      env = p / (2.0 * pi);
    } else {
      x = random_sign(rng) * edge / (1.0 - uniform01(rng));
      env = 2.0 / (p * pi * x * x);
    }
    if (uniform01(rng) * env <= fejer_pdf(p, x))
      return x;
  }
}

double gamma_pdf(double shape, double x)
{
  if (x <= 0.0)
    return 0.0;
  return std::exp((shape - 1.0) * std::log(x) - x - std::lgamma(shape));
}

double normal_pdf(double x)
{
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi);
}

double quad_tail(auto&& integrand, double ell)
{
  return 2.0 * gauss_kronrod<double, 61>::integrate(
                 integrand, ell, std::numeric_limits<double>::infinity(), 15, 1e-12);
}

} // namespace

const std::vector<TestDensity>& all_densities()
{
  static const std::vector<TestDensity> table = make_table();
  return table;
}

const TestDensity& density(DensityId id)
{
  return all_densities()[static_cast<std::size_t>(id)];
}

const TestDensity& parse_density(std::string_view key)
{
  for (const auto& d : all_densities())
    if (key == d.name || (key.size() == 1 && key[0] == d.letter))
      return d;
  throw config_error("unknown density '" + std::string(key) + "'");
}

std::vector<double> sample(const TestDensity& d, std::size_t n, Rng& rng)
{
  std::vector<double> out(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  switch (d.id) {
    case DensityId::uniform:
      for (auto& x : out)
        x = sqrt3 * (2.0 * uniform01(rng) - 1.0);
      break;
    case DensityId::exponential: {
      std::exponential_distribution<double> e(1.0);
      for (auto& x : out)
        x = e(rng);
      break;
    }
    case DensityId::chi2: {
      std::gamma_distribution<double> g(1.5, 2.0);
      for (auto& x : out)
        x = g(rng) / sqrt6;
      break;
    }
    case DensityId::laplace: {
      std::exponential_distribution<double> e(sqrt2);
      for (auto& x : out)
        x = random_sign(rng) * e(rng);
      break;
    }
    case DensityId::gamma: {
      std::gamma_distribution<double> g(2.0, 2.0 / 3.0);
      for (auto& x : out)
        x = g(rng) / gamma_scale;
      break;
    }
    case DensityId::mixgamma: {
      std::gamma_distribution<double> g5(5.0, 1.0), g13(13.0, 1.0);
      for (auto& x : out)
        x = (uniform01(rng) < 0.4 ? g5(rng) : g13(rng)) / mixgamma_scale;
      break;
    }
    case DensityId::stable14:
    case DensityId::stable12:
    case DensityId::stable34:
      for (auto& x : out)
        x = draw_stable(d.stable_index, rng);
      break;
    case DensityId::cauchy:
      for (auto& x : out)
        x = std::tan(pi * (uniform01(rng) - 0.5));
      break;
    case DensityId::gauss:
      for (auto& x : out)
        x = normal(rng);
      break;
    case DensityId::mixgauss:
      for (auto& x : out) {
        const double mean = uniform01(rng) < 0.5 ? -3.0 : 2.0;
        x = sqrt2 * (mean + normal(rng));
      }
      break;
    case DensityId::fejer1:
    case DensityId::fejer5:
    case DensityId::fejer10:
    case DensityId::fejer13:
      for (auto& x : out)
        x = draw_fejer(d.fejer_p, rng);
      break;
  }
  return out;
}

double pdf(const TestDensity& d, double x)
{
  switch (d.id) {
    case DensityId::uniform:
      return std::abs(x) <= sqrt3 ? 1.0 / (2.0 * sqrt3) : 0.0;
    case DensityId::exponential:
      return x >= 0.0 ? std::exp(-x) : 0.0;
    case DensityId::chi2:
      return sqrt6 * gamma_pdf(1.5, 0.5 * sqrt6 * x) * 0.5;
    case DensityId::laplace:
      return std::exp(-sqrt2 * std::abs(x)) / sqrt2;
    case DensityId::gamma: {
      const double y = gamma_scale * x;
      return y > 0.0 ? gamma_scale * 2.25 * y * std::exp(-1.5 * y) : 0.0;
    }
    case DensityId::mixgamma: {
      const double w = mixgamma_scale * x;
      return mixgamma_scale * (0.4 * gamma_pdf(5.0, w) + 0.6 * gamma_pdf(13.0, w));
    }
    case DensityId::stable14:
    case DensityId::stable12:
    case DensityId::stable34:
      throw unsupported_operation("no closed-form density for " + d.name);
    case DensityId::cauchy:
      return 1.0 / (pi * (1.0 + x * x));
    case DensityId::gauss:
      return normal_pdf(x);
    case DensityId::mixgauss: {
      const double v = x / sqrt2;
      return 0.5 * (normal_pdf(v + 3.0) + normal_pdf(v - 2.0)) / sqrt2;
    }
    case DensityId::fejer1:
    case DensityId::fejer5:
    case DensityId::fejer10:
    case DensityId::fejer13:
      return fejer_pdf(d.fejer_p, x);
  }
  return 0.0;
}

cplx cf(const TestDensity& d, double x)
{
  const cplx I(0.0, 1.0);
  switch (d.id) {
    case DensityId::uniform: {
      const double a = sqrt3 * x;
      return std::abs(a) < 1e-8 ? 1.0 - a * a / 6.0 : std::sin(a) / a;
    }
    case DensityId::exponential:
      return 1.0 / (1.0 - I * x);
    case DensityId::chi2:
      return std::pow(1.0 - 2.0 * I * x / sqrt6, -1.5);
    case DensityId::laplace:
      return 1.0 / (1.0 + 0.5 * x * x);
    case DensityId::gamma: {
      const double u = x / gamma_scale;
      return -9.0 / (4.0 * u * u + 12.0 * I * u - 9.0);
    }
    case DensityId::mixgamma: {
      const cplx b = 1.0 / (1.0 - I * (x / mixgamma_scale));
      const cplx b5 = b * b * b * b * b;
      return 0.4 * b5 + 0.6 * b5 * b5 * b * b * b;
    }
    case DensityId::stable14:
    case DensityId::stable12:
    case DensityId::stable34:
      return std::exp(-std::pow(std::abs(x), d.stable_index));
    case DensityId::cauchy:
      return std::exp(-std::abs(x));
    case DensityId::gauss:
      return std::exp(-0.5 * x * x);
    case DensityId::mixgauss: {
      const double t = sqrt2 * x;
      return 0.5 * (std::exp(-3.0 * I * t) + std::exp(2.0 * I * t)) * std::exp(-0.5 * t * t);
    }
    case DensityId::fejer1:
    case DensityId::fejer5:
    case DensityId::fejer10:
    case DensityId::fejer13:
      return std::max(0.0, 1.0 - std::abs(x) / d.fejer_p);
  }
  return 0.0;
}

double sine_integral(double x)
{
  if (x < 0.0)
    return -sine_integral(-x);
  if (x >= 40.0) {
    // asymptotic auxiliary functions; the smallest term is below e^-40
    double f = 0.0, g = 0.0, tf = 1.0 / x, tg = 1.0 / (x * x);
    for (int k = 0; k < 18; ++k) {
      f += tf;
      g += tg;
      tf *= -(2.0 * k + 1.0) * (2.0 * k + 2.0) / (x * x);
      tg *= -(2.0 * k + 2.0) * (2.0 * k + 3.0) / (x * x);
    }
    return 0.5 * pi - f * std::cos(x) - g * std::sin(x);
  }
  auto sinc = [](double t) { return t < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t; };
  // one period at a time keeps each panel non-oscillatory
  double sum = 0.0;
  for (double a = 0.0; a < x; a += pi) {
    const double b = std::min(a + pi, x);
    sum += gauss_kronrod<double, 31>::integrate(sinc, a, b, 10, 1e-14);
  }
  return sum;
}

double tail_energy(const TestDensity& d, double ell)
{
  if (!(ell >= 0.0))
    throw std::invalid_argument("tail_energy needs ell >= 0");
  switch (d.id) {
    case DensityId::uniform: {
      const double a = sqrt3 * ell;
      const double s2 = a > 0.0 ? std::sin(a) * std::sin(a) / a : 0.0;
      return (2.0 / sqrt3) * (s2 + 0.5 * pi - sine_integral(2.0 * a));
    }
    case DensityId::exponential:
      return 2.0 * std::atan2(1.0, ell);
    case DensityId::chi2: {
      const double v = 2.0 * ell / sqrt6;
      return sqrt6 * (1.0 - v / std::sqrt(1.0 + v * v));
    }
    case DensityId::laplace:
      return sqrt2 * (std::atan2(sqrt2, ell) - (ell / sqrt2) / (1.0 + 0.5 * ell * ell));
    case DensityId::gamma:
    case DensityId::mixgamma:
      return quad_tail([&d](double x) { return std::norm(cf(d, x)); }, ell);
    case DensityId::stable14:
    case DensityId::stable12:
    case DensityId::stable34: {
      const double r = d.stable_index;
      return std::pow(2.0, 1.0 - 1.0 / r) / r *
             boost::math::tgamma(1.0 / r, 2.0 * std::pow(ell, r));
    }
    case DensityId::cauchy:
      return std::exp(-2.0 * ell);
    case DensityId::gauss:
      return std::sqrt(pi) * std::erfc(ell);
    case DensityId::mixgauss: {
      const double smooth = std::sqrt(pi / 8.0) * std::erfc(sqrt2 * ell);
      const double w = 5.0 * sqrt2;
      // e^{-2x^2} is below 1e-170 past ell + 14
      const double osc = gauss_kronrod<double, 61>::integrate(
        [w](double x) { return std::cos(w * x) * std::exp(-2.0 * x * x); },
        ell, ell + 14.0, 15, 1e-13);
      return std::max(0.0, smooth + osc);
    }
    case DensityId::fejer1:
    case DensityId::fejer5:
    case DensityId::fejer10:
    case DensityId::fejer13: {
      const double p = d.fejer_p;
      if (ell >= p)
        return 0.0;
      const double u = 1.0 - ell / p;
      return 2.0 * p / 3.0 * u * u * u;
    }
  }
  return 0.0;
}

} // namespace deconv
