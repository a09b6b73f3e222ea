#include "deconv/penalty.hpp"
#include "deconv/quadrature.hpp"

#include <cmath>
#include <limits>

namespace deconv {

namespace quadrature {

GaussLegendre gauss_legendre(std::size_t n)
{
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess for the i-th largest root
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk =
          ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1)
        p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  return rule;
}

const GaussLegendre& gauss_legendre_128()
{
  static const GaussLegendre rule = gauss_legendre(128);
  return rule;
}

} // namespace quadrature

std::string to_string(PenaltyFamily family)
{
  switch (family) {
    case PenaltyFamily::new_laplace:
      return "new-laplace";
    case PenaltyFamily::new_gaussian:
      return "new-gauss";
    case PenaltyFamily::old_laplace:
      return "old-laplace";
    case PenaltyFamily::old_gaussian:
      return "old-gauss";
  }
  return "?";
}

PenaltyFamily parse_penalty_family(std::string_view key)
{
  if (key == "new-laplace")
    return PenaltyFamily::new_laplace;
  if (key == "new-gauss" || key == "new-gaussian")
    return PenaltyFamily::new_gaussian;
  if (key == "old-laplace")
    return PenaltyFamily::old_laplace;
  if (key == "old-gauss" || key == "old-gaussian")
    return PenaltyFamily::old_gaussian;
  throw config_error("unknown penalty family '" + std::string(key) + "'");
}

PenaltyFamily penalty_family_for(NoiseKind kind, bool old)
{
  if (kind == NoiseKind::gaussian)
    return old ? PenaltyFamily::old_gaussian : PenaltyFamily::new_gaussian;
  return old ? PenaltyFamily::old_laplace : PenaltyFamily::new_laplace;
}

double zeta(double ell)
{
  double z = 0.0;
  if (ell < 4.0)
    z += pi;
  if (ell >= 2.0 && ell < 4.0)
    z += (ell - 2.0) * (ell - 2.0) / (4.0 * (pi - 2.0));
  if (ell >= 4.0)
    z += ell;
  return z;
}

double gaussian_penalty_integral(double s)
{
  const double s2 = s * s;
  if (s2 > 700.0)
    return std::numeric_limits<double>::infinity();
  if (s2 == 0.0)
    return 1.0;
  const auto& rule = quadrature::gauss_legendre_128();
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double x = 0.5 * (rule.nodes[k] + 1.0);
    sum += rule.weights[k] * std::exp(s2 * x * x);
  }
  return 0.5 * sum;
}

namespace {

double log_term(const PenaltySpec& spec, double ell)
{
  const double z = spec.smooth_zeta ? zeta(ell) : std::max(ell, pi);
  return 8.0 * std::pow(std::log(z), 2.5);
}

// (2.5/n)(1 - 1/s2n)^2, the prefactor dropped at sigma = 0 unless requested
double new_prefactor(const PenaltySpec& spec)
{
  if (spec.n == 0)
    throw std::invalid_argument("penalty needs n >= 1");
  const double base = 2.5 / static_cast<double>(spec.n);
  if (spec.sigma == 0.0 && !spec.prefactor_at_zero_sigma)
    return base;
  if (!(spec.s2n > 1.0))
    throw penalty_domain_error("penalty requires s2n > 1");
  const double f = 1.0 - 1.0 / spec.s2n;
  return base * f * f;
}

} // namespace

double pen_laplace(const PenaltySpec& spec, double ell)
{
  if (spec.family != PenaltyFamily::new_laplace)
    throw std::invalid_argument("pen_laplace needs the new-laplace family");
  const double s2 = spec.sigma * spec.sigma;
  const double g = 1.0 + 1.0 / spec.s2n;
  const double bracket = ell + log_term(spec, ell) +
                         2.0 * s2 * std::pow(ell, 3) / 3.0 +
                         3.0 * g * g * s2 * s2 * std::pow(ell, 5) / 10.0;
  return new_prefactor(spec) * bracket;
}

double pen_gaussian(const PenaltySpec& spec, double ell)
{
  if (spec.family != PenaltyFamily::new_gaussian)
    throw std::invalid_argument("pen_gaussian needs the new-gauss family");
  const double integral = gaussian_penalty_integral(spec.sigma * ell);
  if (std::isinf(integral))
    return integral;
  const double s2 = spec.sigma * spec.sigma;
  const double bracket = ell + log_term(spec, ell) + s2 * std::pow(ell, 3) / 3.0;
  return new_prefactor(spec) * bracket * integral;
}

double pen_old(const PenaltySpec& spec, double ell)
{
  if (spec.n == 0)
    throw std::invalid_argument("penalty needs n >= 1");
  const double s2 = spec.sigma * spec.sigma;
  const double base = 6.0 / static_cast<double>(spec.n);
  const double logt = pi * std::pow(std::log(std::max(ell / pi, 1.0)), 2.5);
  switch (spec.family) {
    case PenaltyFamily::old_laplace:
      return base * (ell + logt + s2 * std::pow(ell, 3) / 3.0 +
                     s2 * s2 * std::pow(ell, 5) / 20.0);
    case PenaltyFamily::old_gaussian: {
      const double integral = gaussian_penalty_integral(spec.sigma * ell);
      if (std::isinf(integral))
        return integral;
      return base * (ell + logt + std::pow(ell, 3) * s2 / 3.0) * integral;
    }
    default:
      break;
  }
  throw std::invalid_argument("pen_old needs an old-* family");
}

double penalty(const PenaltySpec& spec, double ell)
{
  switch (spec.family) {
    case PenaltyFamily::new_laplace:
      return pen_laplace(spec, ell);
    case PenaltyFamily::new_gaussian:
      return pen_gaussian(spec, ell);
    case PenaltyFamily::old_laplace:
    case PenaltyFamily::old_gaussian:
      return pen_old(spec, ell);
  }
  return 0.0;
}

ModelGrid model_grid(const PenaltySpec& spec)
{
  if (!(spec.delta_grid > 0.0))
    throw config_error("grid step Delta must be positive");
  if (!(spec.ell_max >= spec.delta_grid))
    throw config_error("ell_max must be at least Delta");

  ModelGrid grid;
  const double slack = 1e-9 * spec.delta_grid;
  for (std::size_t m = 1;; ++m) {
    const double ell = static_cast<double>(m) * spec.delta_grid;
    if (ell > spec.ell_max + slack)
      break;
    const double p = penalty(spec, ell);
    if (!(p <= spec.pen_max))
      break;
    grid.ells.push_back(ell);
    grid.pens.push_back(p);
  }
  if (grid.ells.empty())
    throw config_error("empty model grid: pen(Delta) exceeds pen_max");
  return grid;
}

} // namespace deconv
