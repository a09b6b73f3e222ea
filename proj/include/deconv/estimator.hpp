#pragma once

#include "deconv/common.hpp"
#include "deconv/noise.hpp"
#include "deconv/penalty.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace deconv {

//! Projection of the target density on the sinc space of cutoff ell,
//! truncated to the N = 2^M coefficients j = -N/2 .. N/2 - 1.
struct ProjectionEstimate
{
  double ell = 0.0;
  std::vector<cplx> coeffs; // coeffs[j + N/2] holds a_j
  std::size_t n = 0;
  unsigned M = 0;
  NoiseModel noise_used;
  double contrast = 0.0;

  std::size_t size() const { return coeffs.size(); }
  int j_min() const { return -static_cast<int>(coeffs.size() / 2); }
  int j_max() const { return static_cast<int>(coeffs.size() / 2) - 1; }
  const cplx& coeff(int j) const { return coeffs[static_cast<std::size_t>(j - j_min())]; }
};

//! (1/n) sum_k exp(i x Z_k).
cplx empirical_cf(std::span<const double> sample, double x);

//! Frequency nodes y_k = (2k - 1)/N, k = 0..N-1, with the upper half
//! wrapped to [-1, 0) so that every node lies in [-1, 1). The coefficient integrand is sampled at ell * y_k.
std::vector<double> frequency_nodes(unsigned M);

//! Coefficients a_j = sqrt(ell/pi) R_{-j}, R the Riemann transform of the
//! samples u(ell y_k) on the nodes above, i.e. the midpoint rule for
//! (sqrt(ell)/(2 sqrt(pi))) int_{-1}^{1} exp(-i pi j x) u(ell x) dx.
ProjectionEstimate coefficients_from_samples(std::span<const cplx> samples,
                                             double ell,
                                             std::size_t n,
                                             const NoiseModel& noise);

//! Reference path: psi_Z / f_eps*(sigma .) evaluated at every node, then the
//! transform. Throws unsupported_operation if the noise cf underflows.
ProjectionEstimate coefficients(std::span<const double> sample,
                                double ell,
                                const NoiseModel& noise,
                                unsigned M = 8);

//! -(ell/pi)(1/N) sum_k |psi_Z(ell y_k) / f*(sigma ell y_k)|^2 for every ell,
//! using a rotation recurrence over the nodes. Returns +inf for models where
//! the noise cf underflows below 1e-300.
std::vector<double> contrast_path(std::span<const double> sample,
                                  std::span<const double> ells,
                                  const NoiseModel& noise,
                                  unsigned M = 8);

//! Same values as contrast_path with psi_Z evaluated afresh per node.
std::vector<double> contrast_path_reference(std::span<const double> sample,
                                            std::span<const double> ells,
                                            const NoiseModel& noise,
                                            unsigned M = 8);

//! First index of the smallest finite value. Throws config_error if none.
std::size_t argmin_first(std::span<const double> values);

struct Selection
{
  ProjectionEstimate estimate;
  std::vector<double> ells;
  std::vector<double> contrasts;
  std::vector<double> penalties;
  std::vector<double> criteria;
  std::size_t chosen = 0;
};

enum class ContrastMode
{
  fast,
  reference
};

Selection select_models(std::span<const double> sample,
                        const NoiseModel& noise,
                        const ModelGrid& grid,
                        unsigned M = 8,
                        ContrastMode mode = ContrastMode::fast);

//! Penalized choice of ell over model_grid(pen_spec).
ProjectionEstimate select(std::span<const double> sample,
                          const NoiseModel& noise,
                          const PenaltySpec& pen_spec,
                          unsigned M = 8);

//! Re sum_j a_j sqrt(L) phi(L x - j), L = ell/pi, phi(t) = sin(pi t)/(pi t).
std::vector<double> evaluate(const ProjectionEstimate& estimate, std::span<const double> xs);

} // namespace deconv
