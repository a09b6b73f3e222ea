#include "deconv/experiments.hpp"
#include "deconv/estimator.hpp"
#include "deconv/rng.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace deconv {

std::string to_string(Mode mode)
{
  switch (mode) {
    case Mode::basic:
      return "basic";
    case Mode::s2n_estimated:
      return "s2n_estimated";
    case Mode::dependent:
      return "dependent";
    case Mode::misspecified:
      return "misspecified";
    case Mode::ignore_noise:
      return "ignore_noise";
    case Mode::e1_vs_e2:
      return "e1_vs_e2";
  }
  return "?";
}

Mode parse_mode(std::string_view key)
{
  for (Mode m : { Mode::basic, Mode::s2n_estimated, Mode::dependent, Mode::misspecified,
                  Mode::ignore_noise, Mode::e1_vs_e2 })
    if (key == to_string(m))
      return m;
  throw config_error("unknown mode '" + std::string(key) + "'");
}

std::string to_string(DependentKind kind)
{
  switch (kind) {
    case DependentKind::gauss_ar:
      return "gauss_ar";
    case DependentKind::mixed_gauss_ar:
      return "mixed_gauss_ar";
    case DependentKind::nonmixing_uniform:
      return "nonmixing_uniform";
  }
  return "?";
}

namespace {

constexpr std::size_t burn_in = 1000;

void check_ar(double a)
{
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("AR coefficient a must lie in (0, 1)");
}

} // namespace

std::vector<double> gen_dependent(DependentKind kind, double a, std::size_t n, Rng& rng)
{
  std::vector<double> out(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  switch (kind) {
    case DependentKind::gauss_ar: {
      check_ar(a);
      const double s = std::sqrt(1.0 - a * a);
      double y = 0.0;
      for (std::size_t k = 0; k < burn_in; ++k)
        y = a * y + s * normal(rng);
      for (auto& x : out) {
        y = a * y + s * normal(rng);
        x = y;
      }
      break;
    }
    case DependentKind::mixed_gauss_ar: {
      check_ar(a);
      const double s = std::sqrt(1.0 - a * a);
      const double b1 = -3.0 * (1.0 - a), b2 = 2.0 * (1.0 - a);
      double y1 = 0.0, y2 = 0.0;
      for (std::size_t k = 0; k < burn_in; ++k) {
        y1 = a * y1 + b1 + s * normal(rng);
        y2 = a * y2 + b2 + s * normal(rng);
      }
      const double root2 = std::sqrt(2.0);
      for (auto& x : out) {
        y1 = a * y1 + b1 + s * normal(rng);
        y2 = a * y2 + b2 + s * normal(rng);
        x = root2 * (uniform01(rng) < 0.5 ? y1 : y2);
      }
      break;
    }
    case DependentKind::nonmixing_uniform: {
      double u = 0.0;
      for (std::size_t k = 0; k < burn_in; ++k)
        u = 0.5 * u + static_cast<double>(rng() >> 63);
      const double root3 = std::sqrt(3.0);
      for (auto& x : out) {
        u = 0.5 * u + static_cast<double>(rng() >> 63);
        x = root3 * (u - 1.0);
      }
      break;
    }
  }
  return out;
}

std::optional<DependentKind> dependent_kind_for(DensityId id)
{
  switch (id) {
    case DensityId::gauss:
      return DependentKind::gauss_ar;
    case DensityId::mixgauss:
      return DependentKind::mixed_gauss_ar;
    case DensityId::uniform:
      return DependentKind::nonmixing_uniform;
    default:
      return std::nullopt;
  }
}

void ExperimentConfig::validate() const
{
  if (densities.empty())
    throw config_error("no densities configured");
  if (noises.empty() || n_values.empty() || s2n_values.empty())
    throw config_error("noises, n and s2n lists must be nonempty");
  if (reps < 1)
    throw config_error("reps must be at least 1");
  if (M < 8 || M > 11)
    throw config_error("M must lie in [8, 11]");
  if (!(delta_grid > 0.0))
    throw config_error("delta must be positive");
  for (auto n : n_values)
    if (n < 2)
      throw config_error("sample sizes must be at least 2");
  for (double s : s2n_values)
    if (!(s > 0.0) || !std::isfinite(s))
      throw config_error("s2n values must be positive and finite");
  if (mode == Mode::dependent) {
    if (!dependence_a)
      throw config_error("dependent mode needs the AR coefficient a");
    if (!(*dependence_a > 0.0 && *dependence_a < 1.0))
      throw config_error("AR coefficient a must lie in (0, 1)");
    for (auto id : densities)
      if (!dependent_kind_for(id))
        throw config_error("dependent mode supports uniform, gauss and mixgauss, not " +
                           density(id).name);
  }
  if (mode == Mode::e1_vs_e2) {
    for (auto id : densities)
      if (id != DensityId::exponential && id != DensityId::chi2 && id != DensityId::laplace &&
          id != DensityId::cauchy)
        throw config_error("e1_vs_e2 mode supports exponential, chi2, laplace and cauchy, not " +
                           density(id).name);
    if (ise_method)
      throw config_error("e1_vs_e2 mode fixes the ISE methods itself");
  }
  if (mode == Mode::misspecified)
    for (auto k : noises)
      if (k == NoiseKind::none)
        throw config_error("misspecified mode needs a noise law to swap");
  if (ise_method == IseMethod::e1)
    for (auto id : densities)
      if (!density(id).has_pdf)
        throw config_error("E1 is unavailable for " + density(id).name);
}

std::uint64_t cell_id(const CellKey& key)
{
  std::uint64_t h = mix64(static_cast<std::uint64_t>(key.density) + 1);
  h = combine(h, static_cast<std::uint64_t>(key.noise) + 1);
  h = combine(h, key.n);
  return combine(h, std::bit_cast<std::uint64_t>(key.s2n));
}

std::size_t resolve_threads(std::size_t requested)
{
  if (requested > 0)
    return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn)
{
  threads = std::min(resolve_threads(threads), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

double estimate_s2n(std::span<const double> z, double sigma)
{
  if (z.size() < 2)
    throw std::invalid_argument("s2n estimate needs two observations");
  double mean = 0.0;
  for (double v : z)
    mean += v;
  mean /= static_cast<double>(z.size());
  double ss = 0.0;
  for (double v : z)
    ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(z.size() - 1);
  return std::max(var / (sigma * sigma) - 1.0, 1.0 / 0.6);
}

std::vector<CellKey> cells_of(const ExperimentConfig& config)
{
  std::vector<CellKey> keys;
  for (auto d : config.densities)
    for (auto k : config.noises)
      for (auto n : config.n_values)
        for (double s : config.s2n_values)
          keys.push_back({ d, k, n, s });
  return keys;
}

namespace {

PenaltySpec pen_spec_for(const ExperimentConfig& config, NoiseKind kind, std::size_t n, double s2n,
                         double sigma)
{
  PenaltySpec spec;
  spec.family = penalty_family_for(kind, config.old_penalty);
  spec.n = n;
  spec.s2n = s2n;
  spec.sigma = kind == NoiseKind::none ? 0.0 : sigma;
  spec.delta_grid = config.delta_grid;
  spec.ell_max = config.ell_max;
  spec.pen_max = config.pen_max;
  return spec;
}

NoiseKind swapped(NoiseKind kind)
{
  return kind == NoiseKind::laplace ? NoiseKind::gaussian : NoiseKind::laplace;
}

double score(const ProjectionEstimate& est, const TestDensity& d, std::optional<IseMethod> method)
{
  const IseMethod m = method ? *method : (d.has_pdf ? IseMethod::e1 : IseMethod::e2);
  return m == IseMethod::e1 ? ise_interval(est, d).ise : ise_exact(est, d).ise;
}

// Z = X + sigma eps from the cell's X stream (0) and noise stream (1)
std::vector<double> draw_observations(const ExperimentConfig& config,
                                      const CellKey& key,
                                      std::size_t rep,
                                      bool dependent)
{
  const std::uint64_t cell = cell_id(key);
  Rng rx = make_stream(config.seed, cell, rep, 0);
  Rng re = make_stream(config.seed, cell, rep, 1);
  const auto& d = density(key.density);
  std::vector<double> x = dependent
                            ? gen_dependent(*dependent_kind_for(key.density), *config.dependence_a, key.n, rx)
                            : sample(d, key.n, rx);
  const auto model = NoiseModel::from_s2n(key.noise, key.s2n);
  const auto eps = sample_noise(model, key.n, re);
  const double s = model.effective_sigma();
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] += s * eps[i];
  return x;
}

struct CellWork
{
  std::vector<double> num;
  std::vector<double> den;
};

CellWork run_cell_pair(const ExperimentConfig& config, const CellKey& key, Mode mode)
{
  const auto& d = density(key.density);
  const auto model = NoiseModel::from_s2n(key.noise, key.s2n);
  const double sigma = model.effective_sigma();
  const ModelGrid grid = model_grid(pen_spec_for(config, key.noise, key.n, key.s2n, sigma));

  ModelGrid alt_grid;
  NoiseModel alt_model = model;
  if (mode == Mode::misspecified) {
    alt_model = NoiseModel::make(swapped(key.noise), model.sigma);
    alt_grid = model_grid(pen_spec_for(config, alt_model.kind, key.n, key.s2n, sigma));
  } else if (mode == Mode::ignore_noise) {
    alt_model = NoiseModel::none();
    alt_grid = model_grid(pen_spec_for(config, key.noise, key.n, 1.0e4, 0.0));
  }

  const bool paired = mode != Mode::basic;
  CellWork work;
  work.den.resize(config.reps);
  if (paired)
    work.num.resize(config.reps);

  parallel_for(config.reps, config.threads, [&](std::size_t rep) {
    const auto z = draw_observations(config, key, rep, false);
    const auto base = select_models(z, model, grid, config.M).estimate;
    if (mode == Mode::e1_vs_e2) {
      work.den[rep] = ise_interval(base, d).ise;
      work.num[rep] = ise_exact(base, d).ise;
      return;
    }
    work.den[rep] = score(base, d, config.ise_method);
    switch (mode) {
      case Mode::basic:
      case Mode::e1_vs_e2:
        break;
      case Mode::s2n_estimated: {
        double s2n_hat = key.s2n;
        if (sigma > 0.0)
          s2n_hat = estimate_s2n(z, sigma);
        const auto g = model_grid(pen_spec_for(config, key.noise, key.n, s2n_hat, sigma));
        work.num[rep] = score(select_models(z, model, g, config.M).estimate, d, config.ise_method);
        break;
      }
      case Mode::dependent: {
        const auto zd = draw_observations(config, key, rep, true);
        work.num[rep] = score(select_models(zd, model, grid, config.M).estimate, d, config.ise_method);
        break;
      }
      case Mode::misspecified:
      case Mode::ignore_noise:
        work.num[rep] =
          score(select_models(z, alt_model, alt_grid, config.M).estimate, d, config.ise_method);
        break;
    }
  });
  return work;
}

} // namespace

std::vector<double> run_cell(const ExperimentConfig& config, const CellKey& key)
{
  return run_cell_pair(config, key, Mode::basic).den;
}

MiseTable run_basic(const ExperimentConfig& config)
{
  config.validate();
  MiseTable table;
  for (const auto& key : cells_of(config)) {
    const auto ises = run_cell(config, key);
    table.cells.push_back({ key, aggregate(ises) });
  }
  return table;
}

RatioTable run_ratio(const ExperimentConfig& config)
{
  config.validate();
  if (config.mode == Mode::basic)
    throw config_error("basic mode produces a MISE table, not ratios");
  RatioTable table;
  table.mode = config.mode;
  for (const auto& key : cells_of(config)) {
    const auto work = run_cell_pair(config, key, config.mode);
    RatioCell cell{ key, 0.0, aggregate(work.num), aggregate(work.den) };
    const double floor = 1e-12;
    if (cell.numerator.mean < floor && cell.denominator.mean < floor)
      cell.ratio = std::numeric_limits<double>::quiet_NaN();
    else
      cell.ratio = cell.numerator.mean / cell.denominator.mean;
    table.cells.push_back(cell);
  }
  return table;
}

namespace {

RatioTable run_as(ExperimentConfig config, Mode mode)
{
  config.mode = mode;
  return run_ratio(config);
}

} // namespace

RatioTable run_s2n_estimated(const ExperimentConfig& config)
{
  return run_as(config, Mode::s2n_estimated);
}

RatioTable run_dependent(const ExperimentConfig& config)
{
  return run_as(config, Mode::dependent);
}

RatioTable run_misspecified(const ExperimentConfig& config)
{
  return run_as(config, Mode::misspecified);
}

RatioTable run_ignore_noise(const ExperimentConfig& config)
{
  return run_as(config, Mode::ignore_noise);
}

RatioTable run_e1_vs_e2(const ExperimentConfig& config)
{
  return run_as(config, Mode::e1_vs_e2);
}

} // namespace deconv
