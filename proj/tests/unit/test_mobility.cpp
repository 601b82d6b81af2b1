// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "dronenet/error.hpp"
#include "dronenet/mobility.hpp"
#include "dronenet/simulator.hpp"
#include "dronenet/statistics.hpp"

using namespace dronenet;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("straight line kinematics") {
  const Trajectory sl({0.0, 0.0}, 12.5, 100.0, {Segment{0.0, kInf, 0.0}});
  const Point p = sl.position_at(40.0);
  CHECK(p.x == doctest::Approx(500.0));
  CHECK(p.y == doctest::Approx(0.0));
  CHECK(sl.net_displacement(40.0) == 500.0);
  CHECK(sl.position_at(0.0).x == 0.0);
  CHECK_THROWS_AS(sl.position_at(100.5), RangeError);
  CHECK_THROWS_AS(sl.position_at(-1.0), RangeError);
}

TEST_CASE("random walk two-segment example") {
  const Trajectory rw({0.0, 0.0}, 12.5, 20.0,
                      {Segment{0.0, 100.0, 0.0}, Segment{std::numbers::pi / 2.0, 500.0, 0.0}});
  const Point p = rw.position_at(12.0);
  CHECK(p.x == doctest::Approx(100.0));
  CHECK(p.y == doctest::Approx(50.0));
  CHECK(rw.net_displacement(12.0) == doctest::Approx(std::sqrt(100.0 * 100.0 + 50.0 * 50.0)));
  CHECK(rw.net_displacement(12.0) == doctest::Approx(111.80).epsilon(1e-4));
  CHECK(rw.path_length(12.0) == doctest::Approx(150.0));
}

TEST_CASE("random stop halts after its flight") {
  const Trajectory rs({10.0, -5.0}, 12.5, 200.0, {Segment{1.0, 200.0, 0.0}});
  CHECK(rs.net_displacement(100.0) == doctest::Approx(200.0));
  CHECK(rs.net_displacement(8.0) == doctest::Approx(100.0));
  Rng rng(4);
  const auto spec = MobilityModelSpec::rs(12.5, ScalarDistribution::rayleigh_mean(500.0));
  for (int i = 0; i < 100; ++i) {
    const Trajectory t = build_trajectory(spec, {0.0, 0.0}, 80.0, rng);
    REQUIRE(t.segments().size() == 1);
    CHECK(t.net_displacement(80.0) == doctest::Approx(std::min(1000.0, t.segments()[0].length)));
  }
}

TEST_CASE("deterministic flights give waypoints every 8 s") {
  Rng rng(2);
  const auto spec = MobilityModelSpec::rw(12.5, ScalarDistribution::deterministic(100.0));
  const Trajectory t = build_trajectory(spec, {0.0, 0.0}, 80.0, rng);
  CHECK(t.segments().size() >= 10);
  for (int k = 1; k <= 10; ++k) CHECK(t.path_length(8.0 * k) == doctest::Approx(100.0 * k));
}

TEST_CASE("RWP holds position while hovering") {
  const Trajectory rwp({0.0, 0.0}, 10.0, 100.0, {Segment{0.0, 50.0, 3.0}, Segment{1.0, 50.0, 4.0}});
  CHECK(rwp.position_at(1.0).x == 0.0);
  CHECK(rwp.position_at(3.0).x == 0.0);
  const Point a = rwp.position_at(8.5);
  const Point b = rwp.position_at(11.5);
  CHECK(a.x == doctest::Approx(50.0));
  CHECK(b.x == doctest::Approx(50.0));
  CHECK(rwp.path_length(12.0) == doctest::Approx(10.0 * (12.0 - 7.0)));
}

TEST_CASE("trajectory invariants hold for every model") {
  const auto R = ScalarDistribution::rayleigh_mean(500.0);
  const MobilityModelSpec specs[] = {MobilityModelSpec::sl(12.5), MobilityModelSpec::rs(12.5, R),
                                     MobilityModelSpec::rw(12.5, R),
                                     MobilityModelSpec::rwp(12.5, R, ScalarDistribution::exponential(5.0))};
  Rng rng(8);
  for (const auto& spec : specs) {
    for (int i = 0; i < 50; ++i) {
      const Trajectory tr = build_trajectory(spec, {1.0, 2.0}, 300.0, rng);
      Point prev = tr.position_at(0.0);
      CHECK(prev.x == 1.0);
      for (int k = 1; k <= 600; ++k) {
        const double t = 0.5 * k;
        const Point p = tr.position_at(t);
        REQUIRE(distance(p, prev) <= 12.5 * 0.5 + 1e-9);  // continuous, bounded speed
        REQUIRE(tr.net_displacement(t) <= 12.5 * t + 1e-9);
        REQUIRE(tr.path_length(t) <= 12.5 * t + 1e-9);
        REQUIRE(std::abs(tr.net_displacement(t) - distance(p, tr.origin())) <= 1e-6);
        prev = p;
      }
    }
  }
}

TEST_CASE("UE-dependent serving path") {
  const ServingPathUDM path{500.0, 12.5};
  CHECK(path.distance_at(20.0) == doctest::Approx(250.0));
  CHECK(path.distance_at(40.0) == 0.0);
  CHECK(path.distance_at(80.0) == 0.0);
  const Point p = path.position_at({300.0, 400.0}, {0.0, 0.0}, 20.0);
  CHECK(norm(p) == doctest::Approx(250.0));
  const Point q = path.position_at({300.0, 400.0}, {0.0, 0.0}, 100.0);
  CHECK(norm(q) == doctest::Approx(0.0));
}

TEST_CASE("endpoint bearing after five flights is uniform") {
  for (const auto& flight : {ScalarDistribution::rayleigh_mean(500.0), ScalarDistribution::exponential(500.0)}) {
    const WalkEndpoints w = sample_walk_endpoints(flight, 5, 100000, Rng(31));
    CHECK(chi_square_uniformity(w.psi, 36) > 0.01);
  }
}

TEST_CASE("five Rayleigh flights end at a Rayleigh distance") {
  const double sigma = 398.942;
  const WalkEndpoints w = sample_walk_endpoints(ScalarDistribution::rayleigh_sigma(sigma), 5, 100000, Rng(32));
  CHECK(ks_statistic(w.z, [&](double x) { return rayleigh_cdf(x, sigma * std::sqrt(5.0)); }) <= 0.01);
}

TEST_CASE("displaced PPP keeps Poisson counts") {
  const auto counts = displaced_annulus_counts(MobilityModelSpec::rw(12.5, ScalarDistribution::rayleigh_mean(500.0)),
                                               1e-5, 2000.0, 20, 50.0, 4000, Rng(33));
  const DispersionSummary d = dispersion(counts);
  int beyond = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    const double a = 100.0 * i;
    const double b = 100.0 * (i + 1);
    const double expected = 1e-5 * std::numbers::pi * (b * b - a * a);
    beyond += std::abs(d.mean[i] - expected) > 3.0 * d.std_error[i];
    CHECK(d.ratio[i] > 0.85);
    CHECK(d.ratio[i] < 1.15);
  }
  CHECK(beyond <= 2);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(MobilityModelSpec::sl(0.0).validate(), ParameterError);
  CHECK(mobility_kind_from_string("RWP") == MobilityKind::RWP);
  CHECK_THROWS_AS(mobility_kind_from_string("XY"), ParameterError);
}
