// SPDX-License-Identifier: Apache-2.0
#include "dronenet/ppp.hpp"

#include <cmath>
#include <numbers>

#include <boost/random/poisson_distribution.hpp>

#include "dronenet/error.hpp"

namespace dronenet {

Point sample_in_disc(const Disc& window, Rng& rng) {
  const double r = window.radius * std::sqrt(rng.uniform());
  const double th = 2.0 * std::numbers::pi * rng.uniform();
  return {window.center.x + r * std::cos(th), window.center.y + r * std::sin(th)};
}

PlanarPointSet sample_ppp(double lambda0, Disc window, Rng& rng) {
  if (!(std::isfinite(lambda0) && lambda0 > 0.0)) {
    throw ParameterError("PPP density must be finite and strictly positive");
  }
  if (!(std::isfinite(window.radius) && window.radius >= 0.0)) {
    throw ParameterError("window radius must be finite and non-negative");
  }
  PlanarPointSet out{{}, window, lambda0};
  const double mean = lambda0 * std::numbers::pi * window.radius * window.radius;
  if (mean <= 0.0) return out;
  boost::random::poisson_distribution<long long, double> count_law(mean);
  const long long n = count_law(rng);
  out.points.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) out.points.push_back(sample_in_disc(window, rng));
  return out;
}

}  // namespace dronenet
