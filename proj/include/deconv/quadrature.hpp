#pragma once

#include <cstddef>
#include <vector>

namespace deconv::quadrature {

struct GaussLegendre
{
  std::vector<double> nodes;   // on [-1, 1], ascending
  std::vector<double> weights;
};

//! n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussLegendre gauss_legendre(std::size_t n);

//! The 128-point rule, built once.
const GaussLegendre& gauss_legendre_128();

} // namespace deconv::quadrature
