// SPDX-License-Identifier: Apache-2.0
#include "dronenet/statistics.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "dronenet/error.hpp"

namespace dronenet {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left) {
  if (samples.empty()) throw ParameterError("KS statistic needs samples");
  if (samples.size() < 100) throw ParameterError("KS statistic needs at least 100 samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    const double x = samples[i];
    std::size_t j = i;
    while (j < samples.size() && samples[j] == x) ++j;
    const double below = cdf_left ? cdf_left(x) : cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    d = std::max(d, std::abs(cdf(x) - static_cast<double>(j) / n));
    d = std::max(d, std::abs(below - static_cast<double>(i) / n));
    i = j;
  }
  return d;
}

double chi_square_uniformity(const std::vector<double>& angles, int bins) {
  if (bins < 10) throw ParameterError("chi-square test needs at least 10 bins");
  if (angles.size() < 50 * static_cast<std::size_t>(bins)) {
    throw ParameterError("chi-square test needs at least 50 samples per bin");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> count(static_cast<std::size_t>(bins), 0.0);
  for (double a : angles) {
    double w = std::fmod(a, two_pi);
    if (w < 0.0) w += two_pi;
    const int b = std::min(bins - 1, static_cast<int>(w / two_pi * bins));
    count[static_cast<std::size_t>(b)] += 1.0;
  }
  const double expected = static_cast<double>(angles.size()) / bins;
  double stat = 0.0;
  for (double c : count) stat += (c - expected) * (c - expected) / expected;
  return boost::math::gamma_q(0.5 * (bins - 1), 0.5 * stat);
}

DispersionSummary dispersion(const std::vector<std::vector<long>>& counts) {
  if (counts.size() < 2) throw ParameterError("dispersion needs at least two realizations");
  const std::size_t cells = counts.front().size();
  const double R = static_cast<double>(counts.size());
  DispersionSummary s;
  for (std::size_t i = 0; i < cells; ++i) {
    double sum = 0.0;
    for (const auto& row : counts) sum += static_cast<double>(row.at(i));
    const double mean = sum / R;
    double ss = 0.0;
    for (const auto& row : counts) ss += (static_cast<double>(row[i]) - mean) * (static_cast<double>(row[i]) - mean);
    const double var = ss / (R - 1.0);
    s.mean.push_back(mean);
    s.variance.push_back(var);
    s.ratio.push_back(mean > 0.0 ? var / mean : 0.0);
    s.std_error.push_back(std::sqrt(var / R));
  }
  return s;
}

MeanEstimate mean_estimate(const std::vector<double>& x) {
  MeanEstimate e;
  e.count = static_cast<long>(x.size());
  if (x.empty()) return e;
  double sum = 0.0;
  for (double v : x) sum += v;
  e.mean = sum / static_cast<double>(x.size());
  if (x.size() > 1) {
    double ss = 0.0;
    for (double v : x) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
  }
  return e;
}

}  // namespace dronenet
