// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "dronenet/error.hpp"
#include "dronenet/rayleigh_sum.hpp"
#include "dronenet/rng.hpp"
#include "dronenet/statistics.hpp"

using namespace dronenet;

TEST_CASE("shape scale b") {
  CHECK(rayleigh_sum_b(2, 1.0) == doctest::Approx(std::sqrt(3.0) / 2.0));
  // (5!!)^(1/3) / 3 = 15^(1/3) / 3
  CHECK(rayleigh_sum_b(3, 2.0) == doctest::Approx(4.0 * std::cbrt(15.0) / 3.0));
}

TEST_CASE("shape cdf is the antiderivative of the shape pdf") {
  const double a0 = 0.3, a1 = 0.9, a2 = 0.1, b = 1.2;
  for (double x : {0.2, 0.7, 1.5, 3.0}) {
    const double h = 1e-5;
    const double d = (rayleigh_sum_shape_cdf(x + h, 4, a0, a1, a2, b) - rayleigh_sum_shape_cdf(x - h, 4, a0, a1, a2, b)) /
                     (2.0 * h);
    CHECK(d == doctest::Approx(rayleigh_sum_shape_pdf(x, 4, a0, a1, a2, b)).epsilon(1e-5));
  }
  CHECK(rayleigh_sum_shape_cdf(0.0, 4, a0, a1, a2, b) == 0.0);
}

TEST_CASE("fitted law tracks sums of five Rayleigh lengths") {
  const double sigma = 398.94;
  Rng fit_rng(100);
  const RayleighSumFit fit = fit_rayleigh_sum(5, sigma, fit_rng);
  CHECK(fit.cdf(1e9) == doctest::Approx(1.0).epsilon(2e-3));

  Rng rng(101);
  std::vector<double> s(50000);
  double mean = 0.0;
  for (double& x : s) {
    x = 0.0;
    for (int i = 0; i < 5; ++i) x += sigma * std::sqrt(-2.0 * std::log1p(-rng.uniform()));
    mean += x;
  }
  mean /= static_cast<double>(s.size());
  CHECK(ks_statistic(s, [&](double x) { return fit.cdf(x); }) <= 0.02);
  CHECK(fit.mean() == doctest::Approx(5.0 * sigma * std::sqrt(3.14159265358979 / 2.0)).epsilon(0.01));
  CHECK(mean == doctest::Approx(fit.mean()).epsilon(0.01));
}

TEST_CASE("fit argument checks") {
  Rng rng(1);
  CHECK_THROWS_AS(fit_rayleigh_sum(1, 1.0, rng), ParameterError);
  CHECK_THROWS_AS(fit_rayleigh_sum(3, -1.0, rng), ParameterError);
  CHECK_THROWS_AS(fit_rayleigh_sum(3, 1.0, rng, {100, 50}), ParameterError);
}
