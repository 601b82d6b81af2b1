// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dronenet/error.hpp"
#include "dronenet/rng.hpp"
#include "dronenet/statistics.hpp"

using namespace dronenet;

TEST_CASE("Kolmogorov-Smirnov distance") {
  Rng rng(1);
  std::vector<double> u(20000);
  for (double& x : u) x = rng.uniform();
  const auto unit = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_statistic(u, unit) <= 0.01);
  CHECK(ks_statistic(u, [](double x) { return std::clamp(x / 2.0, 0.0, 1.0); }) == doctest::Approx(0.5).epsilon(0.02));
  // All samples at a point mass compared with its own step cdf.
  std::vector<double> c(500, 3.0);
  CHECK(ks_statistic(c, [](double x) { return x >= 3.0 ? 1.0 : 0.0; }) == 0.0);
  CHECK_THROWS_AS(ks_statistic(std::vector<double>(10, 1.0), unit), ParameterError);
}

TEST_CASE("chi-square uniformity") {
  Rng rng(2);
  std::vector<double> a(36000);
  for (double& x : a) x = rng.uniform(0.0, 2.0 * std::numbers::pi);
  CHECK(chi_square_uniformity(a, 36) > 0.01);
  std::vector<double> same(36000, 1.0);
  CHECK(chi_square_uniformity(same, 36) < 1e-12);
  CHECK_THROWS_AS(chi_square_uniformity(std::vector<double>(100, 1.0), 36), ParameterError);
}

TEST_CASE("dispersion and mean estimates") {
  const std::vector<std::vector<long>> counts{{1, 4}, {3, 4}, {2, 4}};
  const auto d = dispersion(counts);
  CHECK(d.mean[0] == doctest::Approx(2.0));
  CHECK(d.variance[0] == doctest::Approx(1.0));
  CHECK(d.ratio[0] == doctest::Approx(0.5));
  CHECK(d.variance[1] == 0.0);
  const auto m = mean_estimate({1.0, 2.0, 3.0, 4.0});
  CHECK(m.mean == 2.5);
  CHECK(m.count == 4);
  CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}
