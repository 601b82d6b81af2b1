// SPDX-License-Identifier: Apache-2.0
#include "dronenet/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "dronenet/error.hpp"

namespace dronenet {

namespace {

void require_positive(double x, const char* what) {
  if (!(std::isfinite(x) && x > 0.0)) {
    throw ParameterError(std::string(what) + " must be finite and strictly positive");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double rayleigh_pdf(double x, double sigma) {
  if (x < 0.0) return 0.0;
  const double s2 = sigma * sigma;
  return x / s2 * std::exp(-x * x / (2.0 * s2));
}

double rayleigh_cdf(double x, double sigma) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-x * x / (2.0 * sigma * sigma));
}

ScalarDistribution::ScalarDistribution(Variant v) : v_(v) {
  std::visit(Overloaded{
                 [](const Rayleigh& d) { require_positive(d.sigma, "Rayleigh sigma"); },
                 [](const Exponential& d) { require_positive(d.mean, "exponential mean"); },
                 [](const Erlang& d) {
                   if (d.shape < 1) throw ParameterError("Erlang shape must be >= 1");
                   require_positive(d.stage_mean, "Erlang stage mean");
                 },
                 [](const Deterministic& d) { require_positive(d.value, "deterministic value"); },
                 [](const Uniform& d) {
                   if (!(std::isfinite(d.lo) && std::isfinite(d.hi) && d.lo >= 0.0 && d.hi > d.lo)) {
                     throw ParameterError("uniform bounds must satisfy 0 <= lo < hi");
                   }
                 },
             },
             v_);
}

ScalarDistribution ScalarDistribution::rayleigh_sigma(double sigma) {
  return ScalarDistribution(Rayleigh{sigma});
}

ScalarDistribution ScalarDistribution::rayleigh_mean(double mean) {
  require_positive(mean, "Rayleigh mean");
  return ScalarDistribution(Rayleigh{mean / std::sqrt(std::numbers::pi / 2.0)});
}

ScalarDistribution ScalarDistribution::exponential(double mean) {
  return ScalarDistribution(Exponential{mean});
}

ScalarDistribution ScalarDistribution::erlang(int shape, double stage_mean) {
  return ScalarDistribution(Erlang{shape, stage_mean});
}

ScalarDistribution ScalarDistribution::deterministic(double value) {
  return ScalarDistribution(Deterministic{value});
}

ScalarDistribution ScalarDistribution::uniform(double lo, double hi) {
  return ScalarDistribution(Uniform{lo, hi});
}

double ScalarDistribution::pdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const Rayleigh& d) { return rayleigh_pdf(x, d.sigma); },
          [x](const Exponential& d) { return x < 0.0 ? 0.0 : std::exp(-x / d.mean) / d.mean; },
          [x](const Erlang& d) {
            if (x < 0.0) return 0.0;
            return boost::math::gamma_p_derivative(static_cast<double>(d.shape), x / d.stage_mean) /
                   d.stage_mean;
          },
          [](const Deterministic&) { return 0.0; },
          [x](const Uniform& d) { return (x >= d.lo && x < d.hi) ? 1.0 / (d.hi - d.lo) : 0.0; },
      },
      v_);
}

double ScalarDistribution::cdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const Rayleigh& d) { return rayleigh_cdf(x, d.sigma); },
          [x](const Exponential& d) { return x <= 0.0 ? 0.0 : -std::expm1(-x / d.mean); },
          [x](const Erlang& d) {
            if (x <= 0.0) return 0.0;
            return boost::math::gamma_p(static_cast<double>(d.shape), x / d.stage_mean);
          },
          [x](const Deterministic& d) { return x >= d.value ? 1.0 : 0.0; },
          [x](const Uniform& d) {
            if (x <= d.lo) return 0.0;
            if (x >= d.hi) return 1.0;
            return (x - d.lo) / (d.hi - d.lo);
          },
      },
      v_);
}

double ScalarDistribution::mean() const {
  return std::visit(Overloaded{
                        [](const Rayleigh& d) { return d.sigma * std::sqrt(std::numbers::pi / 2.0); },
                        [](const Exponential& d) { return d.mean; },
                        [](const Erlang& d) { return d.shape * d.stage_mean; },
                        [](const Deterministic& d) { return d.value; },
                        [](const Uniform& d) { return 0.5 * (d.lo + d.hi); },
                    },
                    v_);
}

double ScalarDistribution::second_moment() const {
  return std::visit(Overloaded{
                        [](const Rayleigh& d) { return 2.0 * d.sigma * d.sigma; },
                        [](const Exponential& d) { return 2.0 * d.mean * d.mean; },
                        [](const Erlang& d) {
                          return d.shape * (d.shape + 1.0) * d.stage_mean * d.stage_mean;
                        },
                        [](const Deterministic& d) { return d.value * d.value; },
                        [](const Uniform& d) {
                          return (d.lo * d.lo + d.lo * d.hi + d.hi * d.hi) / 3.0;
                        },
                    },
                    v_);
}

double ScalarDistribution::variance() const {
  const double m = mean();
  return second_moment() - m * m;
}

double ScalarDistribution::support_lo() const {
  if (is<Deterministic>()) return as<Deterministic>().value;
  if (is<Uniform>()) return as<Uniform>().lo;
  return 0.0;
}

double ScalarDistribution::support_hi() const {
  if (is<Deterministic>()) return as<Deterministic>().value;
  if (is<Uniform>()) return as<Uniform>().hi;
  return std::numeric_limits<double>::infinity();
}

double ScalarDistribution::upper_quantile(double eps) const {
  return std::visit(
      Overloaded{
          [eps](const Rayleigh& d) { return d.sigma * std::sqrt(-2.0 * std::log(eps)); },
          [eps](const Exponential& d) { return -d.mean * std::log(eps); },
          [eps](const Erlang& d) {
            return d.stage_mean * boost::math::gamma_q_inv(static_cast<double>(d.shape), eps);
          },
          [](const Deterministic& d) { return d.value; },
          [](const Uniform& d) { return d.hi; },
      },
      v_);
}

double ScalarDistribution::sample(Rng& rng) const {
  return std::visit(Overloaded{
                        [&rng](const Rayleigh& d) {
                          return d.sigma * std::sqrt(2.0 * rng.exponential());
                        },
                        [&rng](const Exponential& d) { return d.mean * rng.exponential(); },
                        [&rng](const Erlang& d) {
                          double s = 0.0;
                          for (int i = 0; i < d.shape; ++i) s += rng.exponential();
                          return d.stage_mean * s;
                        },
                        [](const Deterministic& d) { return d.value; },
                        [&rng](const Uniform& d) { return rng.uniform(d.lo, d.hi); },
                    },
                    v_);
}

std::string ScalarDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&os](const Rayleigh& d) { os << "rayleigh(sigma=" << d.sigma << ")"; },
                 [&os](const Exponential& d) { os << "exponential(mean=" << d.mean << ")"; },
                 [&os](const Erlang& d) {
                   os << "erlang(shape=" << d.shape << ",stage_mean=" << d.stage_mean << ")";
                 },
                 [&os](const Deterministic& d) { os << "deterministic(" << d.value << ")"; },
                 [&os](const Uniform& d) { os << "uniform(" << d.lo << "," << d.hi << ")"; },
             },
             v_);
  return os.str();
}

double sample_scalar(const ScalarDistribution& dist, Rng& rng) { return dist.sample(rng); }

double sample_gamma_fading(int m, Rng& rng) {
  if (m < 1) throw ParameterError("fading shape m must be >= 1");
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += rng.exponential();
  return s / m;
}

}  // namespace dronenet
