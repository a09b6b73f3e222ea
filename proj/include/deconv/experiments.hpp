#pragma once

#include "deconv/densities.hpp"
#include "deconv/noise.hpp"
#include "deconv/penalty.hpp"
#include "deconv/risk.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deconv {

enum class Mode
{
  basic,
  s2n_estimated,
  dependent,
  misspecified,
  ignore_noise,
  e1_vs_e2
};

std::string to_string(Mode mode);
Mode parse_mode(std::string_view key);

enum class DependentKind
{
  gauss_ar,
  mixed_gauss_ar,
  nonmixing_uniform
};

std::string to_string(DependentKind kind);

//! Stationary dependent draws. AR kinds need 0 < a < 1; the mixed kind is
//! scaled by sqrt(2) to follow the mixed Gaussian test law.
std::vector<double> gen_dependent(DependentKind kind, double a, std::size_t n, Rng& rng);

//! Dependent generator whose marginal is the given test law, if any.
std::optional<DependentKind> dependent_kind_for(DensityId id);

struct ExperimentConfig
{
  std::vector<DensityId> densities;
  std::vector<NoiseKind> noises{ NoiseKind::laplace, NoiseKind::gaussian };
  std::vector<std::size_t> n_values{ 100, 250, 500, 1000, 2500 };
  std::vector<double> s2n_values{ 2, 4, 10, 100, 1000 };
  std::size_t reps = 1000;
  unsigned M = 8;
  double delta_grid = 0.1;
  double ell_max = 10.0 * pi;
  double pen_max = 5.0;
  std::uint64_t seed = 1;
  Mode mode = Mode::basic;
  std::optional<double> dependence_a;
  std::optional<IseMethod> ise_method; //!< unset: E1 when a pdf exists, else E2
  bool old_penalty = false;
  std::size_t threads = 0; //!< 0: hardware concurrency

  void validate() const;
};

struct CellKey
{
  DensityId density;
  NoiseKind noise;
  std::size_t n;
  double s2n;
};

//! Stream id of a cell; does not depend on the mode.
std::uint64_t cell_id(const CellKey& key);

struct MiseCell
{
  CellKey key;
  Summary summary;
};

struct RatioCell
{
  CellKey key;
  double ratio; //!< NaN when both means are below 1e-12
  Summary numerator;
  Summary denominator;
};

struct MiseTable
{
  std::vector<MiseCell> cells;
};

struct RatioTable
{
  Mode mode = Mode::basic;
  std::vector<RatioCell> cells;
};

//! Runs fn(0..count-1) on up to `threads` workers; each index exactly once.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

std::size_t resolve_threads(std::size_t requested);

//! Per-replication ISE of the correctly specified procedure for one cell.
std::vector<double> run_cell(const ExperimentConfig& config, const CellKey& key);

MiseTable run_basic(const ExperimentConfig& config);

//! Ratio modes: numerator is the modified procedure, denominator the basic
//! one on the same draws (for e1_vs_e2, E2 over E1 on the same estimates).
RatioTable run_ratio(const ExperimentConfig& config);

RatioTable run_s2n_estimated(const ExperimentConfig& config);
RatioTable run_dependent(const ExperimentConfig& config);
RatioTable run_misspecified(const ExperimentConfig& config);
RatioTable run_ignore_noise(const ExperimentConfig& config);
RatioTable run_e1_vs_e2(const ExperimentConfig& config);

//! max(Var(Z)/sigma^2 - 1, 1/0.6)
double estimate_s2n(std::span<const double> z, double sigma);

//! All cells of a config in output order (density, noise, n, s2n).
std::vector<CellKey> cells_of(const ExperimentConfig& config);

} // namespace deconv
