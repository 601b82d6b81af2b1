// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dronenet/distributions.hpp"
#include "dronenet/error.hpp"
#include "dronenet/quadrature.hpp"

using namespace dronenet;

TEST_CASE("Rayleigh parameterized by its mean") {
  const auto r = ScalarDistribution::rayleigh_mean(500.0);
  CHECK(r.as<Rayleigh>().sigma == doctest::Approx(398.942).epsilon(1e-6));
  CHECK(r.mean() == doctest::Approx(500.0));
  CHECK(r.ccdf(500.0) == doctest::Approx(std::exp(-std::numbers::pi / 4.0)).epsilon(1e-12));
  CHECK(r.ccdf(500.0) == doctest::Approx(0.4559).epsilon(1e-4));
}

TEST_CASE("pdf integrates to one and cdf' = pdf") {
  const ScalarDistribution dists[] = {ScalarDistribution::rayleigh_sigma(3.0), ScalarDistribution::exponential(5.0),
                                      ScalarDistribution::erlang(3, 2.0), ScalarDistribution::uniform(1.0, 4.0)};
  for (const auto& d : dists) {
    const double total = integrate_adaptive([&](double x) { return d.pdf(x); }, d.support_lo(),
                                            std::min(d.support_hi(), d.upper_quantile(1e-14)), 1e-12)
                             .value;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
  const double sigma = 398.942;
  for (int i = 1; i <= 100; ++i) {
    const double x = 20.0 * i;
    const double h = 1e-3;
    const double fd = (rayleigh_cdf(x + h, sigma) - rayleigh_cdf(x - h, sigma)) / (2.0 * h);
    CHECK(std::abs(fd - rayleigh_pdf(x, sigma)) < 1e-8);
  }
}

TEST_CASE("Erlang cdf arithmetic") {
  // Two exponential stages of mean 5 s: F(10) = 1 - 3 e^-2.
  const auto w = ScalarDistribution::erlang(2, 5.0);
  CHECK(w.cdf(10.0) == doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(w.cdf(10.0) == doctest::Approx(0.5940).epsilon(1e-4));
}

TEST_CASE("deterministic law is a point mass") {
  const auto d = ScalarDistribution::deterministic(12.5);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) CHECK(sample_scalar(d, rng) == 12.5);
  CHECK(d.cdf(12.4999) == 0.0);
  CHECK(d.cdf(12.5) == 1.0);
  CHECK_FALSE(d.has_density());
}

TEST_CASE("gamma fading moments") {
  Rng rng(5);
  const int n = 1000000;
  for (int m : {1, 2}) {
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = sample_gamma_fading(m, rng);
      s += x;
      s2 += x * x;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 1.0) < 0.01);
    CHECK(std::abs(var - 1.0 / m) < 0.01);
  }
  CHECK_THROWS_AS(sample_gamma_fading(0, rng), ParameterError);
}

TEST_CASE("sample means match analytic means") {
  Rng rng(9);
  const ScalarDistribution dists[] = {ScalarDistribution::rayleigh_mean(500.0), ScalarDistribution::exponential(5.0),
                                      ScalarDistribution::uniform(0.0, 1000.0), ScalarDistribution::erlang(4, 2.5)};
  for (const auto& d : dists) {
    const int n = 200000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += d.sample(rng);
    CHECK(std::abs(s / n - d.mean()) < 4.0 * std::sqrt(d.variance() / n));
  }
}

TEST_CASE("non-positive scale parameters are rejected") {
  CHECK_THROWS_AS(ScalarDistribution::rayleigh_sigma(0.0), ParameterError);
  CHECK_THROWS_AS(ScalarDistribution::exponential(-1.0), ParameterError);
  CHECK_THROWS_AS(ScalarDistribution::uniform(2.0, 1.0), ParameterError);
}
