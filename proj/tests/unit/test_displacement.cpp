// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dronenet/displacement.hpp"
#include "dronenet/error.hpp"
#include "dronenet/quadrature.hpp"
#include "dronenet/simulator.hpp"
#include "dronenet/statistics.hpp"

using namespace dronenet;

TEST_CASE("straight line law is a point mass at vt") {
  const auto d = sl_displacement(12.5, 40.0);
  REQUIRE(d.atoms().size() == 1);
  CHECK(d.atoms()[0].at == 500.0);
  CHECK(d.atom_mass() == 1.0);
  CHECK(d.cdf(499.9) == 0.0);
  CHECK(d.cdf(500.0) == 1.0);
  CHECK(d.cdf_left(500.0) == 0.0);
}

TEST_CASE("random stop law") {
  const auto R = ScalarDistribution::rayleigh_mean(500.0);
  const auto d = rs_displacement(R, 12.5, 40.0);
  CHECK(d.atom_mass() == doctest::Approx(std::exp(-std::numbers::pi / 4.0)));
  CHECK(d.cdf(250.0) == doctest::Approx(R.cdf(250.0)));
  CHECK(d.cdf(500.0) == 1.0);
  CHECK(d.continuous_mass() + d.atom_mass() == doctest::Approx(1.0));
  // A flight law that never stops inside vt reduces to the straight line.
  const auto far = rs_displacement(ScalarDistribution::uniform(1000.0, 2000.0), 12.5, 40.0);
  CHECK(far.atom_mass() == 1.0);
  for (double l : {0.0, 100.0, 499.0, 500.0}) CHECK(far.cdf(l) == sl_displacement(12.5, 40.0).cdf(l));
}

TEST_CASE("random walk law at t = 50") {
  const auto R = ScalarDistribution::rayleigh_mean(500.0);
  const FlightWalkLaw law(R);
  const auto d = rw_displacement(law, 12.5, 50.0);
  CHECK(d.atom_mass() == doctest::Approx(1.0 - R.cdf(625.0)));
  CHECK(d.cdf(625.0) == 1.0);
  CHECK(d.cdf(700.0) == 1.0);
  CHECK(d.cdf(0.0) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(std::abs(d.raw_total_mass() - 1.0) <= 1e-3);
  // cdf is non-decreasing and the density integrates to the cdf.
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double l = 625.0 * i / 51.0;
    const double c = d.cdf(l);
    CHECK(c >= prev - 1e-12);
    prev = c;
  }
  const double m = integrate_adaptive([&](double l) { return d.pdf(l); }, 0.0, 300.0, 1e-9).value;
  CHECK(m == doctest::Approx(d.cdf(300.0)).epsilon(1e-4));
}

TEST_CASE("random walk law matches simulated walks") {
  const auto R = ScalarDistribution::rayleigh_mean(500.0);
  const auto spec = MobilityModelSpec::rw(12.5, R);
  const DisplacementModel model(spec);
  const auto d = model.at(100.0);
  const auto samples = sample_net_displacement(spec, 100.0, 30000, Rng(77));
  const double ks = ks_statistic(samples, [&](double x) { return d->cdf(x); },
                                 [&](double x) { return d->cdf_left(x); });
  CHECK(ks <= 0.02);
}

TEST_CASE("random waypoint law matches simulated walks") {
  const auto spec = MobilityModelSpec::rwp(12.5, ScalarDistribution::rayleigh_mean(500.0),
                                           ScalarDistribution::exponential(5.0));
  const DisplacementModel model(spec);
  const auto d = model.at(100.0);
  CHECK(std::abs(d->raw_total_mass() - 1.0) <= 1e-3);
  const auto samples = sample_net_displacement(spec, 100.0, 30000, Rng(78));
  const double ks = ks_statistic(samples, [&](double x) { return d->cdf(x); },
                                 [&](double x) { return d->cdf_left(x); });
  CHECK(ks <= 0.02);
}

TEST_CASE("circular flight law") {
  const auto d = arc_displacement(500.0, 12.5, 40.0);
  CHECK(d.atoms()[0].at == doctest::Approx(1000.0 * std::sin(0.5)));
  CHECK(d.atoms()[0].at <= 500.0);
  CHECK_THROWS_AS(arc_displacement(0.0, 12.5, 40.0), ParameterError);
}

TEST_CASE("series length and its cap") {
  const FlightWalkLaw law(ScalarDistribution::rayleigh_mean(500.0));
  const int k = series_length(law, 3750.0, 1e-4, 200);
  CHECK(k >= 7);
  CHECK(law.cdf_S(k + 1, 3750.0) < 1e-4);
  CHECK_THROWS_AS(series_length(law, 3750.0, 1e-4, 2), NumericalError);
}

TEST_CASE("invalid displacement inputs") {
  const FlightWalkLaw law(ScalarDistribution::rayleigh_mean(500.0));
  CHECK_THROWS_AS(rw_displacement(law, 12.5, -1.0), ParameterError);
  CHECK_THROWS_AS(sl_displacement(12.5, -1.0), ParameterError);
  const WaitLaw fixed(ScalarDistribution::deterministic(5.0), 100.0);
  CHECK_THROWS_AS(rwp_displacement(law, fixed, 12.5, 50.0), ParameterError);
}
