// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dronenet/error.hpp"
#include "dronenet/quadrature.hpp"
#include "dronenet/rng.hpp"
#include "dronenet/walk_laws.hpp"

using namespace dronenet;

namespace {

// Integral of a joint density over z in (0, s) with z = s sin(phi), which removes the edge singularity.
double z_integral(const FlightWalkLaw& law, int n, double s) {
  return integrate_gl([&](double phi) { return law.joint(n, s, s * std::sin(phi)) * s * std::cos(phi); }, 0.0,
                      std::numbers::pi / 2.0, 64);
}

double total_mass(const FlightWalkLaw& law, int n, double s_hi) {
  double acc = 0.0;
  const int pieces = 40;
  for (int i = 0; i < pieces; ++i) {
    const double a = s_hi * i / pieces;
    const double b = s_hi * (i + 1) / pieces;
    acc += integrate_gl([&](double s) { return z_integral(law, n, s); }, a, b, 16);
  }
  return acc;
}

}  // namespace

TEST_CASE("two-flight joint law") {
  const FlightWalkLaw law(ScalarDistribution::rayleigh_sigma(1.0));
  CHECK(total_mass(law, 2, 12.0) == doctest::Approx(1.0).epsilon(1e-3));
  for (double s : {0.5, 1.5, 3.0}) {
    for (double f : {0.1, 0.5, 0.9}) {
      CHECK(law.joint(2, s, f * s) == doctest::Approx(law.joint2_quadrature(s, f * s)).epsilon(1e-4));
    }
  }
  CHECK(law.joint(2, 1.0, 1.5) == 0.0);
  CHECK(law.joint(2, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS((void)law.joint(1, 1.0, 0.5), ParameterError);
}

TEST_CASE("two-flight joint law for exponential flights integrates to one") {
  const FlightWalkLaw law(ScalarDistribution::exponential(1.0));
  CHECK(total_mass(law, 2, 30.0) == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("net displacement of Rayleigh walks is Rayleigh") {
  const FlightWalkLaw law(ScalarDistribution::rayleigh_sigma(2.0));
  CHECK(law.sigma_Z(3) == doctest::Approx(2.0 * std::sqrt(3.0)));
  for (double z : {1.0, 3.0, 6.0}) {
    const double sz = 2.0 * std::sqrt(3.0);
    CHECK(law.cdf_Z(3, z) == doctest::Approx(1.0 - std::exp(-z * z / (2.0 * sz * sz))));
  }
}

TEST_CASE("conditioned three-flight joint integrates to one and keeps z <= s") {
  const FlightWalkLaw law(ScalarDistribution::rayleigh_sigma(1.0));
  CHECK(total_mass(law, 3, 14.0) == doctest::Approx(1.0).epsilon(3e-3));
  CHECK(law.joint(3, 2.0, 2.5) == 0.0);
}

TEST_CASE("three-flight joint against simulated walks") {
  // Probability that S_3 <= 3 and Z_3 <= 1.5 for unit Rayleigh flights.
  const FlightWalkLaw law(ScalarDistribution::rayleigh_sigma(1.0));
  double analytic = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double a = 3.0 * i / 20.0;
    const double b = 3.0 * (i + 1) / 20.0;
    analytic += integrate_gl(
        [&](double s) {
          const double zmax = std::min(s, 1.5);
          return integrate_gl([&](double z) { return law.joint(3, s, z); }, 0.0, zmax, 32);
        },
        a, b, 16);
  }
  Rng rng(5);
  const long n = 200000;
  long hits = 0;
  for (long k = 0; k < n; ++k) {
    double s = 0.0, x = 0.0, y = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double r = std::sqrt(-2.0 * std::log1p(-rng.uniform()));
      const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
      s += r;
      x += r * std::cos(th);
      y += r * std::sin(th);
    }
    hits += (s <= 3.0 && std::hypot(x, y) <= 1.5);
  }
  const double mc = static_cast<double>(hits) / n;
  // The product form is an approximation, so only closeness is expected.
  CHECK(std::abs(analytic - mc) < 0.05);
}

TEST_CASE("aggregate hover laws") {
  const WaitLaw w(ScalarDistribution::exponential(5.0), 400.0);
  // W_1 = T_0 + T_1 is Erlang(2, 5): F(10) = 1 - 3 e^-2.
  CHECK(w.cdf_W(1, 10.0) == doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-3));
  CHECK(w.cdf_W(0, 10.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-3));
  for (double x : {5.0, 20.0, 60.0}) {
    CHECK(w.cdf_W(2, x) <= w.cdf_W(1, x) + 1e-9);
    CHECK(w.cdf_W(3, x) <= w.cdf_W(2, x) + 1e-9);
  }
  CHECK_THROWS_AS((void)w.cdf_W(-1, 1.0), ParameterError);
}

TEST_CASE("grid convolution powers") {
  const auto powers = convolution_powers(ScalarDistribution::exponential(1.0), 3, 40.0);
  REQUIRE(powers.size() == 3);
  // Sum of three unit exponentials: Erlang(3, 1).
  const double x = 2.5;
  const double expected = 1.0 - std::exp(-x) * (1.0 + x + 0.5 * x * x);
  CHECK(powers[2].cdf_at(x) == doctest::Approx(expected).epsilon(2e-3));
  CHECK_THROWS_AS(convolution_powers(ScalarDistribution::deterministic(1.0), 2, 10.0), ParameterError);
}
