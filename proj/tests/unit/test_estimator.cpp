#include "oracles.hpp"

#include "deconv/densities.hpp"
#include "deconv/estimator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace deconv;

namespace {

std::vector<double> normal_sample(std::size_t n, std::uint64_t seed, double scale = 1.0)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v)
    x = z(rng);
  return v;
}

std::vector<cplx> oracle_coeffs(std::span<const double> z, double ell, const NoiseModel& noise, unsigned M)
{
  auto u = [&](double x) { return oracle::ecf(z, x) / noise.cf(noise.sigma * x); };
  return oracle::direct_coefficients(u, ell, std::size_t{ 1 } << M);
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double sum_sq(const ProjectionEstimate& e)
{
  double s = 0.0;
  for (const auto& c : e.coeffs)
    s += std::norm(c);
  return s;
}

} // namespace

TEST_CASE("empirical cf")
{
  const auto z = normal_sample(20, 1);
  CHECK(empirical_cf(z, 0.0) == cplx(1.0, 0.0));
  const std::vector<double> zero{ 0.0 };
  CHECK(empirical_cf(zero, 3.7) == cplx(1.0, 0.0));
  const std::vector<double> one{ 1.0 };
  CHECK(std::abs(empirical_cf(one, pi) - std::polar(1.0, pi)) < 1e-15);
  CHECK(std::abs(empirical_cf(z, 2.3) - oracle::ecf(z, 2.3)) < 1e-14);
  for (double x : { 0.5, 4.0, 50.0 })
    CHECK(std::abs(empirical_cf(z, x)) <= 1.0 + 1e-15);
  CHECK_THROWS(empirical_cf(std::vector<double>{}, 1.0));
}

TEST_CASE("frequency nodes are the odd multiples of 1/N in [-1, 1)")
{
  const auto y = frequency_nodes(4);
  REQUIRE(y.size() == 16);
  CHECK(y[0] == doctest::Approx(-1.0 / 16));
  CHECK(y[1] == doctest::Approx(1.0 / 16));
  auto sorted = y;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < 16; ++k)
    CHECK(sorted[k] == doctest::Approx(-1.0 + (2.0 * k + 1.0) / 16));
}

TEST_CASE("point mass at the origin")
{
  const std::vector<double> z{ 0.0 };
  for (double ell : { 0.5, 3.0, 12.0 }) {
    const auto e = coefficients(z, ell, NoiseModel::none(), 8);
    REQUIRE(e.size() == 256);
    CHECK(e.j_min() == -128);
    CHECK(e.j_max() == 127);
    CHECK(std::abs(e.coeff(0) - std::sqrt(ell / pi)) < 1e-10);
    for (int j = e.j_min(); j <= e.j_max(); ++j)
      if (j != 0)
        CHECK(std::abs(e.coeff(j)) < 1e-10);
  }
}

TEST_CASE("point mass at c against the defining integral")
{
  const double ell = pi / 2.0;
  for (double c : { 0.0, 0.3, 1.0 }) {
    const auto e = coefficients(std::vector<double>{ c }, ell, NoiseModel::none(), 11);
    for (int j = -4; j <= 4; ++j) {
      const cplx ref = oracle::point_mass_coefficient(c, ell, j);
      CHECK(std::abs(e.coeff(j) - ref) < 1e-6);
      const double L = ell / pi, t = L * c - j;
      const double phi = t == 0.0 ? 1.0 : std::sin(pi * t) / (pi * t);
      CHECK(std::abs(ref - std::sqrt(L) * phi) < 1e-9);
    }
  }
  // at M = 8 the gap is the midpoint rule's O(N^-2)
  const auto e8 = coefficients(std::vector<double>{ 1.0 }, ell, NoiseModel::none(), 8);
  CHECK(std::abs(e8.coeff(0) - oracle::point_mass_coefficient(1.0, ell, 0)) < 1e-4);
}

TEST_CASE("coefficients match the direct discrete sum")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 8.0);
  for (int trial = 0; trial < 8; ++trial) {
    const auto z = normal_sample(10 + 5 * trial, 50 + trial, 1.5);
    const NoiseModel noise = trial % 3 == 0 ? NoiseModel::laplace(0.6)
                             : trial % 3 == 1 ? NoiseModel::gaussian(0.3)
                                              : NoiseModel::none();
    const double ell = trial == 0 ? 3.2 : u(rng);
    const auto e = coefficients(z, ell, noise, 8);
    CHECK(max_abs_diff(e.coeffs, oracle_coeffs(z, ell, noise, 8)) < 1e-12);
  }
}

TEST_CASE("coefficients are real for real even noise cf")
{
  const auto z = normal_sample(80, 5);
  for (const auto& noise : { NoiseModel::laplace(0.5), NoiseModel::gaussian(0.5), NoiseModel::none() }) {
    const auto e = coefficients(z, 2.7, noise, 8);
    for (const auto& c : e.coeffs)
      CHECK(std::abs(c.imag()) < 1e-10);
  }
}

TEST_CASE("contrast is minus the coefficient energy")
{
  const auto z = normal_sample(60, 8);
  const auto e = coefficients(z, 4.1, NoiseModel::laplace(0.4), 8);
  CHECK(std::abs(e.contrast + sum_sq(e)) < 1e-10);
}

TEST_CASE("contrast identity against per-observation u*")
{
  // gamma_n(t) = ||t||^2 - (2/n) sum_i u*_t(Z_i), t = g_hat; u*_{phi_j}(z) by
  // the midpoint rule of the defining integral at one observation
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ud(0.5, 6.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto z = normal_sample(15, 300 + trial, 1.2);
    const auto noise = trial % 2 ? NoiseModel::gaussian(0.4) : NoiseModel::laplace(0.7);
    const double ell = ud(rng);
    const auto e = coefficients(z, ell, noise, 6);
    std::vector<cplx> mean_u(e.size(), 0.0);
    for (double zi : z) {
      auto u = [&](double x) { return std::polar(1.0, x * zi) / noise.cf(noise.sigma * x); };
      const auto ui = oracle::direct_coefficients(u, ell, e.size());
      for (std::size_t j = 0; j < e.size(); ++j)
        mean_u[j] += ui[j] / static_cast<double>(z.size());
    }
    double norm2 = 0.0, cross = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) {
      norm2 += std::norm(e.coeffs[j]);
      cross += (std::conj(e.coeffs[j]) * mean_u[j]).real();
    }
    CHECK(std::abs((norm2 - 2.0 * cross) - e.contrast) < 1e-8);
  }
}

TEST_CASE("fast contrast path equals the reference path")
{
  const auto z = normal_sample(300, 77);
  std::vector<double> ells;
  for (int m = 1; m <= 120; ++m)
    ells.push_back(0.1 * m);
  for (const auto& noise : { NoiseModel::laplace(0.5), NoiseModel::gaussian(0.3), NoiseModel::none() }) {
    const auto fast = contrast_path(z, ells, noise, 8);
    const auto ref = contrast_path_reference(z, ells, noise, 8);
    REQUIRE(fast.size() == ells.size());
    for (std::size_t i = 0; i < ells.size(); ++i) {
      CHECK(std::abs(fast[i] - ref[i]) < 1e-8 * std::max(1.0, std::abs(ref[i])));
      const auto e = coefficients(z, ells[i], noise, 8);
      CHECK(std::abs(fast[i] - e.contrast) < 1e-8 * std::max(1.0, std::abs(e.contrast)));
    }
  }
}

TEST_CASE("underflowing noise cf excludes the model")
{
  const auto z = normal_sample(20, 3);
  const auto g = NoiseModel::gaussian(1.0);
  CHECK_THROWS_AS(coefficients(z, 40.0, g, 8), unsupported_operation);
  const std::vector<double> ells{ 1.0, 40.0 };
  const auto c = contrast_path(z, ells, g, 8);
  CHECK(std::isfinite(c[0]));
  CHECK(std::isinf(c[1]));
  CHECK(c[1] > 0);
}

TEST_CASE("M outside [3, 20] is rejected")
{
  const std::vector<double> z{ 0.0, 1.0 };
  CHECK_THROWS(coefficients(z, 1.0, NoiseModel::none(), 2));
  CHECK_NOTHROW(coefficients(z, 1.0, NoiseModel::none(), 3));
}

TEST_CASE("argmin_first breaks ties to the left and skips non-finite values")
{
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(argmin_first(std::vector<double>{ 3.0, 1.0, 1.0, 2.0 }) == 1);
  CHECK(argmin_first(std::vector<double>{ inf, nan, 5.0, 5.0 }) == 2);
  CHECK_THROWS_AS(argmin_first(std::vector<double>{ inf, nan }), config_error);
}

TEST_CASE("selection over degenerate grids")
{
  const auto z = normal_sample(100, 9);
  ModelGrid one{ { 2.0 }, { 0.1 } };
  auto s = select_models(z, NoiseModel::laplace(0.3), one);
  CHECK(s.chosen == 0);
  CHECK(s.estimate.ell == 2.0);

  ModelGrid twins{ { 2.0, 2.0, 2.0 }, { 0.1, 0.1, 0.1 } };
  CHECK(select_models(z, NoiseModel::laplace(0.3), twins).chosen == 0);

  // equal criteria forced through the penalty: the point mass has
  // contrast -ell/pi, so pen = ell/pi ties every model at zero
  const std::vector<double> pm{ 0.0 };
  ModelGrid tied{ { 1.0, 2.0, 4.0 }, { 1.0 / pi, 2.0 / pi, 4.0 / pi } };
  const auto t = select_models(pm, NoiseModel::none(), tied);
  for (double c : t.criteria)
    CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("selection records the whole path")
{
  const auto z = normal_sample(200, 12);
  PenaltySpec spec;
  spec.family = PenaltyFamily::new_laplace;
  spec.n = z.size();
  spec.sigma = 0.5;
  spec.s2n = 4.0;
  const auto grid = model_grid(spec);
  const auto s = select_models(z, NoiseModel::laplace(0.5), grid);
  REQUIRE(s.criteria.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(s.criteria[i] == doctest::Approx(s.contrasts[i] + s.penalties[i]));
  CHECK(s.chosen == argmin_first(s.criteria));
  CHECK(s.estimate.ell == grid.ells[s.chosen]);
  const auto r = select_models(z, NoiseModel::laplace(0.5), grid, 8, ContrastMode::reference);
  CHECK(r.chosen == s.chosen);
}

TEST_CASE("selected cutoff is small for a Gaussian sample")
{
  Rng rng = make_stream(4, 1, 0);
  const auto x = sample(density(DensityId::gauss), 500, rng);
  const auto noise = NoiseModel::from_s2n(NoiseKind::laplace, 10.0);
  const auto eps = sample_noise(noise, x.size(), rng);
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    z[i] = x[i] + noise.sigma * eps[i];
  PenaltySpec spec;
  spec.family = PenaltyFamily::new_laplace;
  spec.n = z.size();
  spec.sigma = noise.sigma;
  spec.s2n = 10.0;
  const auto e = select(z, noise, spec);
  CHECK(e.ell > 0.5);
  CHECK(e.ell < 6.0);
  CHECK(e.n == 500);
  CHECK(e.M == 8);
}

TEST_CASE("evaluate on a single basis function")
{
  const double ell = 2.5;
  ProjectionEstimate e;
  e.ell = ell;
  e.coeffs.assign(16, 0.0);
  e.coeffs[8] = std::sqrt(ell / pi);
  const std::vector<double> xs{ 0.0, pi / ell, -3.0 * pi / ell, 7.0 * pi / ell };
  const auto v = evaluate(e, xs);
  CHECK(v[0] == doctest::Approx(ell / pi).epsilon(1e-15));
  for (std::size_t i = 1; i < v.size(); ++i)
    CHECK(std::abs(v[i]) < 1e-15);
}

TEST_CASE("evaluate matches the term-by-term sum")
{
  std::mt19937_64 rng(31);
  std::normal_distribution<double> z;
  ProjectionEstimate e;
  e.ell = 3.3;
  e.coeffs.resize(64);
  for (auto& c : e.coeffs)
    c = z(rng);
  std::vector<double> xs;
  for (int i = -200; i <= 200; ++i)
    xs.push_back(0.037 * i);
  xs.push_back(pi / e.ell * 5.0);
  xs.push_back(pi / e.ell * 5.0 + 1e-9);
  const auto v = evaluate(e, xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(std::abs(v[i] - oracle::sinc_series(e.coeffs, e.ell, xs[i]).real()) < 1e-12);
}

TEST_CASE("shift covariance without noise")
{
  const auto z = normal_sample(50, 3);
  std::vector<double> xs;
  for (int i = -40; i <= 40; ++i)
    xs.push_back(0.1 * i);

  auto shift_error = [&](double ell, double c, unsigned M) {
    auto zc = z;
    for (auto& v : zc)
      v += c;
    auto xc = xs;
    for (auto& v : xc)
      v += c;
    const auto a = evaluate(coefficients(z, ell, NoiseModel::none(), M), xs);
    const auto b = evaluate(coefficients(zc, ell, NoiseModel::none(), M), xc);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  };

  // lattice shifts move the coefficients by whole indices: exact up to the
  // few coefficients pushed past the band edge
  for (double ell : { 1.0, 3.0, 10.0 }) {
    const double c = pi / ell * std::floor(ell / pi);
    if (c > 0.0 && c <= 1.0) {
      auto zc = z;
      for (auto& v : zc)
        v += c;
      const auto e = coefficients(z, ell, NoiseModel::none(), 8);
      const auto ec = coefficients(zc, ell, NoiseModel::none(), 8);
      const int m = static_cast<int>(std::lround(c * ell / pi));
      for (int j = e.j_min(); j + m <= e.j_max(); ++j)
        CHECK(std::abs(ec.coeff(j + m) - e.coeff(j)) < 1e-12);
    }
  }

  // other shifts: the truncated sinc series loses O(1/N)
  for (double ell : { 1.0, 3.0, 10.0 }) {
    for (double c : { 0.3, 1.0, -0.7 }) {
      const double e8 = shift_error(ell, c, 8);
      const double e11 = shift_error(ell, c, 11);
      CHECK(e8 < 1e-3);
      CHECK(e11 < 1e-4);
      CHECK(e11 < e8 / 4.0);
    }
  }
}

TEST_CASE("M = 8 and M = 11 agree on the selected criterion")
{
  struct Case
  {
    DensityId d;
    NoiseKind k;
    std::size_t n;
    double s2n;
  };
  const Case cases[] = { { DensityId::gauss, NoiseKind::laplace, 1000, 10 },
                         { DensityId::uniform, NoiseKind::laplace, 100, 2 },
                         { DensityId::mixgauss, NoiseKind::laplace, 250, 4 },
                         { DensityId::fejer5, NoiseKind::gaussian, 2500, 10 },
                         { DensityId::cauchy, NoiseKind::gaussian, 500, 100 } };
  int seed = 0;
  for (const auto& c : cases) {
    Rng rng = make_stream(99, ++seed, 0);
    const auto x = sample(density(c.d), c.n, rng);
    const auto noise = NoiseModel::from_s2n(c.k, c.s2n);
    const auto eps = sample_noise(noise, c.n, rng);
    std::vector<double> z(c.n);
    for (std::size_t i = 0; i < c.n; ++i)
      z[i] = x[i] + noise.sigma * eps[i];
    PenaltySpec spec;
    spec.family = penalty_family_for(c.k);
    spec.n = c.n;
    spec.sigma = noise.sigma;
    spec.s2n = c.s2n;
    const auto grid = model_grid(spec);
    const auto s8 = select_models(z, noise, grid, 8);
    const auto s11 = select_models(z, noise, grid, 11);
    const double a = s8.criteria[s8.chosen];
    const double b = s11.criteria[s8.chosen];
    CHECK(std::abs(a - b) < 1e-3 * std::abs(b));
  }
}
