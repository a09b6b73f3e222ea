#pragma once

#include "deconv/densities.hpp"
#include "deconv/estimator.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deconv {

enum class IseMethod
{
  e1, //!< trapezoid rule on the density's interval
  e2  //!< whole-line bias + coefficient error
};

std::string to_string(IseMethod method);
IseMethod parse_ise_method(std::string_view key);

struct RiskResult
{
  double ise = 0.0;
  IseMethod method = IseMethod::e1;
  double bias_part = 0.0;     //!< E2 only
  double variance_part = 0.0; //!< E2 only
  double ell_used = 0.0;
};

//! int_I (g_hat - g)^2 by the trapezoid rule on grid_points equispaced nodes.
RiskResult ise_interval(const ProjectionEstimate& estimate,
                        const TestDensity& d,
                        std::size_t grid_points = 512);

struct ExactIseOptions
{
  //! add (M2 + 1) ell^2 / (pi^2 K_n) for the truncation of the basis
  bool add_truncation_bound = false;
  double moment_bound = 0.0; //!< M2
};

//! tail_energy(ell)/(2 pi) + sum_j |a_j - a_hat_j|^2 with a_j the projection
//! coefficients of g computed by the estimator's own discretization.
RiskResult ise_exact(const ProjectionEstimate& estimate,
                     const TestDensity& d,
                     const ExactIseOptions& options = {});

//! Projection coefficients of g itself on the estimator's nodes.
ProjectionEstimate projection_of(const TestDensity& d, double ell, unsigned M = 8);

struct Summary
{
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0; //!< sample standard deviation, 0 for a single value
  std::size_t count = 0;
};

Summary aggregate(std::span<const double> values);

} // namespace deconv
