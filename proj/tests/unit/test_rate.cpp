// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dronenet/density.hpp"
#include "dronenet/error.hpp"
#include "dronenet/quadrature.hpp"
#include "dronenet/rate.hpp"

using namespace dronenet;

namespace {

constexpr double kPi = std::numbers::pi;

// Exponent of the Laplace transform by direct adaptive integration over the plane.
double exponent_reference(const InterfererDensity& d, const ChannelParams& ch, double s) {
  const double m = ch.mx;
  auto f = [&](double ux) {
    const double c = std::pow(ux * ux + ch.h * ch.h, -0.5 * ch.alpha) / m;
    return 2.0 * kPi * ux * d(ux) * (1.0 - std::pow(1.0 + c * s, -m));
  };
  // Many short panels resolve the square-root edges of the density at the breakpoints.
  const double top = d.homogeneous_beyond() + 4000.0;
  std::vector<double> cuts{0.0};
  for (double b : d.breakpoints()) cuts.push_back(b);
  cuts.push_back(top);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double b = cuts[k + 1];
    const int panels = 5000;
    for (int i = 0; i < panels && b > a; ++i) acc += integrate_gl(f, a + (b - a) * i / panels, a + (b - a) * (i + 1) / panels, 16);
  }
  acc += integrate_adaptive(f, top, std::numeric_limits<double>::infinity(), 1e-12, 10).value;
  return acc;
}

}  // namespace

TEST_CASE("Laplace transform basics") {
  const ChannelParams ch;
  const auto d = sl_density(1e-6, 500.0, 12.5, 40.0);
  CHECK(conditional_laplace(0.0, d, ch, 3)[0] == doctest::Approx(1.0));
  double prev = 1.0;
  for (double s : {1e5, 1e6, 1e7, 1e8, 1e9}) {
    const double l = conditional_laplace(s, d, ch, 0)[0];
    CHECK(l <= prev);
    CHECK(l > 0.0);
    prev = l;
  }
  // An exclusion zone far larger than any path-loss scale leaves almost no interference.
  const auto empty = uim_density(1e-6, 1e7);
  // Beyond R >> h the exponent is 2 pi lambda0 s / R for alpha = 3.
  CHECK(conditional_laplace(1e6, empty, ch, 0)[0] == doctest::Approx(std::exp(-2.0 * kPi * 1e-6 * 1e6 / 1e7)).epsilon(1e-9));
}

TEST_CASE("quadrature exponent matches direct integration") {
  for (int mx : {1, 2}) {
    ChannelParams ch;
    ch.mx = mx;
    for (const auto& d : {uim_density(1e-6, 300.0), sl_density(1e-6, 500.0, 12.5, 20.0),
                          rs_density(1e-6, 500.0, 12.5, 60.0, ScalarDistribution::rayleigh_mean(500.0))}) {
      const InterferenceField field(d, ch);
      for (double s : {1e6, 1e7, 1e8}) {
        CHECK(field.exponent(s) == doctest::Approx(exponent_reference(d, ch, s)).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("Laplace derivatives match finite differences") {
  ChannelParams ch;
  const auto d = sl_density(1e-6, 500.0, 12.5, 20.0);
  const double s = 3e7;
  const double h = 1e-3 * s;
  const auto l = conditional_laplace(s, d, ch, 2);
  const auto lp = conditional_laplace(s + h, d, ch, 1);
  const auto lm = conditional_laplace(s - h, d, ch, 1);
  CHECK(l[1] == doctest::Approx((lp[0] - lm[0]) / (2.0 * h)).epsilon(1e-5));
  CHECK(l[2] == doctest::Approx((lp[1] - lm[1]) / (2.0 * h)).epsilon(1e-5));
  // Signs alternate for a completely monotone transform.
  CHECK(l[1] < 0.0);
  CHECK(l[2] > 0.0);
}

TEST_CASE("composition recursion on a known exponent") {
  // g(s) = s gives L = e^-s and L^(k) = (-1)^k e^-s.
  const std::vector<double> g{0.7, 1.0, 0.0, 0.0};
  const auto l = laplace_from_exponent(g);
  for (int k = 0; k < 4; ++k) CHECK(l[k] == doctest::Approx(std::pow(-1.0, k) * std::exp(-0.7)));
}

TEST_CASE("serving distance") {
  const DensityProvider udm(ServiceModel::UDM, MobilityModelSpec::sl(12.5), 1e-6, 100.0);
  CHECK(udm.serving_distance(500.0, 20.0) == doctest::Approx(250.0));
  CHECK(udm.serving_distance(500.0, 40.0) == 0.0);
  CHECK(udm.serving_distance(500.0, 90.0) == 0.0);
  const DensityProvider uim(ServiceModel::UIM, MobilityModelSpec::sl(12.5), 1e-6, 100.0);
  CHECK(uim.serving_distance(500.0, 90.0) == 500.0);
}

TEST_CASE("rate properties") {
  RateQuery q;
  q.model = MobilityModelSpec::sl(12.5);
  q.service = ServiceModel::UIM;
  const double uim0 = average_rate(q).value;
  q.t = 80.0;
  CHECK(average_rate(q).value == doctest::Approx(uim0).epsilon(1e-6));
  CHECK(session_rate(q, 60.0).value == doctest::Approx(uim0).epsilon(1e-4));

  q.service = ServiceModel::UDM;
  q.t = 0.0;
  const double r0 = average_rate(q).value;
  CHECK(r0 == doctest::Approx(uim0).epsilon(1e-6));
  q.t = 60.0;
  const double r60 = average_rate(q).value;
  CHECK(r60 > r0);
  const double sr = session_rate(q, 60.0).value;
  CHECK(sr > r0);
  CHECK(sr < r60);

  q.channel.power = 7.0;
  CHECK(average_rate(q).value == doctest::Approx(r60).epsilon(1e-9));
  q.channel.power = 1.0;
  q.channel.h = 200.0;
  CHECK(average_rate(q).value < r60);
  q.channel.h = 100.0;
  q.channel.m0 = 2;
  CHECK(average_rate(q).value > r60);
}

TEST_CASE("channel validation") {
  ChannelParams ch;
  ch.alpha = 1.5;
  CHECK_THROWS_AS(ch.validate(), ParameterError);
  ch = {};
  ch.h = 0.0;
  CHECK_THROWS_AS(ch.validate(), ParameterError);
  ch = {};
  ch.m0 = 0;
  CHECK_THROWS_AS(ch.validate(), ParameterError);
  RateQuery q;
  q.channel.alpha = 2.0;
  CHECK_THROWS_AS(average_rate(q), ParameterError);
}
