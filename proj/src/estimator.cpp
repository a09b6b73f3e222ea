#include "deconv/estimator.hpp"
#include "deconv/spectral.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <limits>

namespace deconv {

namespace {

constexpr double cf_floor = 1e-300;

void check_M(unsigned M)
{
  if (M < 3 || M > 20)
    throw std::invalid_argument("FFT exponent M must lie in [3, 20]");
}

void check_sample(std::span<const double> sample)
{
  if (sample.empty())
    throw std::invalid_argument("empty sample");
}

} // namespace

cplx empirical_cf(std::span<const double> sample, double x)
{
  check_sample(sample);
  double re = 0.0, im = 0.0;
  for (double z : sample) {
    re += std::cos(x * z);
    im += std::sin(x * z);
  }
  const double inv = 1.0 / static_cast<double>(sample.size());
  return { re * inv, im * inv };
}

std::vector<double> frequency_nodes(unsigned M)
{
  check_M(M);
  const std::size_t N = std::size_t{ 1 } << M;
  std::vector<double> y(N);
  for (std::size_t k = 0; k < N; ++k) {
    double v = (2.0 * static_cast<double>(k) - 1.0) / static_cast<double>(N);
    if (v >= 1.0)
      v -= 2.0;
    y[k] = v;
  }
  return y;
}

ProjectionEstimate coefficients_from_samples(std::span<const cplx> samples,
                                             double ell,
                                             std::size_t n,
                                             const NoiseModel& noise)
{
  if (!(ell > 0.0))
    throw std::invalid_argument("cutoff ell must be positive");
  const std::size_t N = samples.size();
  const auto R = spectral::riemann_fourier(samples);

  ProjectionEstimate est;
  est.ell = ell;
  est.n = n;
  est.M = static_cast<unsigned>(std::countr_zero(N));
  est.noise_used = noise;
  est.coeffs.resize(N);
  const double scale = std::sqrt(ell / pi);
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(N / 2);
  double energy = 0.0;
  for (std::ptrdiff_t j = -half; j < half; ++j) {
    // R is defined for indices 0..N-1 and its phase factor exp(-i pi j/N)
    // is antiperiodic, so index -j for j > 0 reads slot N - j with a sign flip
    const cplx a = j <= 0 ? scale * R[static_cast<std::size_t>(-j)]
                          : -scale * R[N - static_cast<std::size_t>(j)];
    est.coeffs[static_cast<std::size_t>(j + half)] = a;
    energy += std::norm(a);
  }
  est.contrast = -energy;
  return est;
}

ProjectionEstimate coefficients(std::span<const double> sample,
                                double ell,
                                const NoiseModel& noise,
                                unsigned M)
{
  check_sample(sample);
  if (!(ell > 0.0))
    throw std::invalid_argument("cutoff ell must be positive");
  const auto y = frequency_nodes(M);
  std::vector<cplx> X(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double w = ell * y[k];
    const double f = noise.scaled_cf(w);
    if (!(std::abs(f) >= cf_floor))
      throw unsupported_operation("noise characteristic function underflows at the model cutoff");
    X[k] = empirical_cf(sample, w) / f;
  }
  return coefficients_from_samples(X, ell, sample.size(), noise);
}

std::vector<double> contrast_path(std::span<const double> sample,
                                  std::span<const double> ells,
                                  const NoiseModel& noise,
                                  unsigned M)
{
  check_sample(sample);
  check_M(M);
  const std::size_t N = std::size_t{ 1 } << M;
  const std::size_t half = N / 2;
  const std::size_t n = sample.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  // structure of arrays so the inner loop over observations vectorizes
  std::vector<double> cr(n), ci(n), sr(n), si(n);
  std::vector<double> out(ells.size());

  for (std::size_t m = 0; m < ells.size(); ++m) {
    const double ell = ells[m];
    if (!(ell > 0.0))
      throw std::invalid_argument("cutoff ell must be positive");
    // node q sits at frequency ell (2q + 1)/N; the negative half mirrors it
    const double top = noise.scaled_cf(ell * static_cast<double>(2 * half - 1) / N);
    bool underflow = !(std::abs(top) >= cf_floor);
    for (std::size_t q = 0; q < half && !underflow; ++q)
      underflow = !(std::abs(noise.scaled_cf(ell * static_cast<double>(2 * q + 1) / N)) >= cf_floor);
    if (underflow) {
      out[m] = std::numeric_limits<double>::infinity();
      continue;
    }

    const double step = ell / static_cast<double>(N);
    for (std::size_t i = 0; i < n; ++i) {
      const double th = step * sample[i];
      cr[i] = std::cos(th);
      ci[i] = std::sin(th);
      sr[i] = std::cos(2.0 * th);
      si[i] = std::sin(2.0 * th);
    }

    double total = 0.0;
    double* __restrict pcr = cr.data();
    double* __restrict pci = ci.data();
    const double* __restrict psr = sr.data();
    const double* __restrict psi = si.data();
    for (std::size_t q = 0; q < half; ++q) {
      double re = 0.0, im = 0.0;
#pragma omp simd reduction(+ : re, im)
      for (std::size_t i = 0; i < n; ++i) {
        const double a = pcr[i], b = pci[i];
        re += a;
        im += b;
        pcr[i] = a * psr[i] - b * psi[i];
        pci[i] = a * psi[i] + b * psr[i];
      }
      const double f = noise.scaled_cf(ell * static_cast<double>(2 * q + 1) / N);
      total += (re * re + im * im) * inv_n * inv_n / (f * f);
    }
    out[m] = -(ell / pi) * 2.0 * total / static_cast<double>(N);
  }
  return out;
}

std::vector<double> contrast_path_reference(std::span<const double> sample,
                                            std::span<const double> ells,
                                            const NoiseModel& noise,
                                            unsigned M)
{
  std::vector<double> out(ells.size());
  for (std::size_t m = 0; m < ells.size(); ++m) {
    try {
      out[m] = coefficients(sample, ells[m], noise, M).contrast;
    } catch (const unsupported_operation&) {
      out[m] = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

std::size_t argmin_first(std::span<const double> values)
{
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      continue;
    if (best == values.size() || values[i] < values[best])
      best = i;
  }
  if (best == values.size())
    throw config_error("no admissible model: every criterion is infinite");
  return best;
}

Selection select_models(std::span<const double> sample,
                        const NoiseModel& noise,
                        const ModelGrid& grid,
                        unsigned M,
                        ContrastMode mode)
{
  if (grid.ells.empty())
    throw config_error("empty model grid");
  Selection sel;
  sel.ells = grid.ells;
  sel.penalties = grid.pens;
  sel.contrasts = mode == ContrastMode::fast ? contrast_path(sample, grid.ells, noise, M)
                                             : contrast_path_reference(sample, grid.ells, noise, M);
  sel.criteria.resize(sel.ells.size());
  for (std::size_t m = 0; m < sel.ells.size(); ++m)
    sel.criteria[m] = sel.contrasts[m] + sel.penalties[m];
  sel.chosen = argmin_first(sel.criteria);
  sel.estimate = coefficients(sample, sel.ells[sel.chosen], noise, M);
  return sel;
}

ProjectionEstimate select(std::span<const double> sample,
                          const NoiseModel& noise,
                          const PenaltySpec& pen_spec,
                          unsigned M)
{
  return select_models(sample, noise, model_grid(pen_spec), M).estimate;
}

std::vector<double> evaluate(const ProjectionEstimate& estimate, std::span<const double> xs)
{
  const double L = estimate.ell / pi;
  const double sqL = std::sqrt(L);
  const int j0 = estimate.j_min();
  std::vector<double> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double t = L * xs[k];
    // sin(pi (t - j)) = (-1)^(j + r) sin(pi f) with t = r + f, r the nearest integer
    const double r = std::nearbyint(t);
    const double f = t - r;
    const double sf = std::sin(pi * f);
    const bool r_odd = std::fmod(std::abs(r), 2.0) == 1.0;
    double re = 0.0;
    [[maybe_unused]] double im = 0.0;
    for (std::size_t idx = 0; idx < estimate.coeffs.size(); ++idx) {
      const int j = j0 + static_cast<int>(idx);
      const double d = f + (r - j);
      double phi;
      if (std::abs(d) < 1e-6) {
        const double pd = pi * d;
        phi = 1.0 - pd * pd / 6.0;
      } else {
        const bool odd = r_odd != ((j & 1) != 0);
        phi = (odd ? -sf : sf) / (pi * d);
      }
      re += estimate.coeffs[idx].real() * phi;
#ifndef NDEBUG
      im += estimate.coeffs[idx].imag() * phi;
#endif
    }
    assert(std::abs(im * sqL) < 1e-8);
    out[k] = re * sqL;
  }
  return out;
}

} // namespace deconv
