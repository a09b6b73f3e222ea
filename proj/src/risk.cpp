#include "deconv/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace deconv {

std::string to_string(IseMethod method)
{
  return method == IseMethod::e1 ? "e1" : "e2";
}

IseMethod parse_ise_method(std::string_view key)
{
  if (key == "e1" || key == "E1")
    return IseMethod::e1;
  if (key == "e2" || key == "E2")
    return IseMethod::e2;
  throw config_error("unknown ISE method '" + std::string(key) + "'");
}

RiskResult ise_interval(const ProjectionEstimate& estimate,
                        const TestDensity& d,
                        std::size_t grid_points)
{
  if (!d.has_pdf)
    throw unsupported_operation("interval ISE needs a density; use the exact method for " + d.name);
  if (grid_points < 64)
    throw std::invalid_argument("interval ISE needs at least 64 grid points");
  const double h = (d.hi - d.lo) / static_cast<double>(grid_points - 1);
  std::vector<double> xs(grid_points);
  for (std::size_t k = 0; k < grid_points; ++k)
    xs[k] = d.lo + h * static_cast<double>(k);
  const auto est = evaluate(estimate, xs);
  double sum = 0.0;
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double e = est[k] - pdf(d, xs[k]);
    const double w = (k == 0 || k + 1 == grid_points) ? 0.5 : 1.0;
    sum += w * e * e;
  }
  RiskResult r;
  r.ise = sum * h;
  r.method = IseMethod::e1;
  r.ell_used = estimate.ell;
  return r;
}

ProjectionEstimate projection_of(const TestDensity& d, double ell, unsigned M)
{
  const auto y = frequency_nodes(M);
  std::vector<cplx> G(y.size());
  for (std::size_t k = 0; k < y.size(); ++k)
    G[k] = cf(d, ell * y[k]);
  return coefficients_from_samples(G, ell, 0, NoiseModel::none());
}

RiskResult ise_exact(const ProjectionEstimate& estimate,
                     const TestDensity& d,
                     const ExactIseOptions& options)
{
  const auto truth = projection_of(d, estimate.ell, estimate.M);
  double var = 0.0;
  for (std::size_t i = 0; i < truth.coeffs.size(); ++i)
    var += std::norm(truth.coeffs[i] - estimate.coeffs[i]);
  RiskResult r;
  r.method = IseMethod::e2;
  r.bias_part = tail_energy(d, estimate.ell) / (2.0 * pi);
  r.variance_part = var;
  if (options.add_truncation_bound) {
    const double K = static_cast<double>(estimate.coeffs.size() - 1);
    r.bias_part += (options.moment_bound + 1.0) * estimate.ell * estimate.ell / (pi * pi * K);
  }
  r.ise = r.bias_part + r.variance_part;
  r.ell_used = estimate.ell;
  return r;
}

Summary aggregate(std::span<const double> values)
{
  if (values.empty())
    throw std::invalid_argument("aggregate of an empty list");
  Summary s;
  s.count = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = s.count / 2;
  s.median = s.count % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values)
      ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

} // namespace deconv
