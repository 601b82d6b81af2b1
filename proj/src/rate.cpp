// SPDX-License-Identifier: Apache-2.0
#include "dronenet/rate.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "dronenet/error.hpp"
#include "dronenet/quadrature.hpp"

namespace dronenet {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void ChannelParams::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("h must be positive");
  if (!(alpha > 2.0) || !std::isfinite(alpha)) throw ParameterError("alpha must exceed 2");
  if (m0 < 1 || mx < 1) throw ParameterError("Nakagami shapes must be integers >= 1");
  if (!(power > 0.0)) throw ParameterError("power must be positive");
}

InterferenceField::InterferenceField(const InterfererDensity& density, const ChannelParams& ch, int nodes)
    : m_(static_cast<double>(ch.mx)) {
  ch.validate();
  const double lambda0 = density.lambda0();
  const double h2 = ch.h * ch.h;
  const double beyond = density.homogeneous_beyond();
  auto add = [&](double weight, double r2) {
    if (weight <= 0.0) return;
    weight_.push_back(weight);
    c_.push_back(std::pow(r2, -0.5 * ch.alpha) / m_);
  };

  // Inhomogeneous part, piecewise between breakpoints, cosine-mapped Gauss-Legendre.
  std::vector<double> cuts{0.0};
  for (double p : density.breakpoints()) {
    if (p > 0.0 && p < beyond) cuts.push_back(p);
  }
  if (beyond > 0.0) cuts.push_back(beyond);
  const QuadratureRule& rule = gauss_legendre(nodes);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double half = 0.5 * (cuts[i + 1] - a);
    if (!(half > 0.0)) continue;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double th = 0.5 * kPi * (rule.nodes[k] + 1.0);
      const double u = a + half * (1.0 - std::cos(th));
      const double jac = 0.5 * kPi * rule.weights[k] * half * std::sin(th);
      add(lambda0 * 2.0 * kPi * u * density.ratio(u) * jac, u * u + h2);
    }
  }

  // Homogeneous tail in w = u^2 + h^2 with w = W0 y^(-1/p), p = alpha/2 - 1.
  const double W0 = beyond * beyond + h2;
  const double p = 0.5 * ch.alpha - 1.0;
  const QuadratureRule& tail = gauss_legendre(16);
  const double panels[] = {0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  for (int j = 0; j + 1 < 6; ++j) {
    const double lo = panels[j];
    const double hw = 0.5 * (panels[j + 1] - lo);
    for (std::size_t k = 0; k < tail.nodes.size(); ++k) {
      const double y = lo + hw * (tail.nodes[k] + 1.0);
      const double w = W0 * std::pow(y, -1.0 / p);
      add(lambda0 * kPi * (W0 / p) * std::pow(y, -1.0 / p - 1.0) * hw * tail.weights[k], w);
    }
  }
}

std::vector<double> InterferenceField::exponent_derivatives(double s, int k_max) const {
  if (s < 0.0) throw RangeError("s must be non-negative");
  if (k_max < 0) throw ParameterError("k_max must be non-negative");
  std::vector<double> g(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (std::size_t i = 0; i < weight_.size(); ++i) {
    const double c = c_[i];
    const double lp = std::log1p(c * s);
    g[0] += weight_[i] * -std::expm1(-m_ * lp);
    double rising = 1.0;
    double cj = 1.0;
    for (int j = 1; j <= k_max; ++j) {
      rising *= m_ + j - 1;
      cj *= c;
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      g[static_cast<std::size_t>(j)] += weight_[i] * sign * rising * cj * std::exp(-(m_ + j) * lp);
    }
  }
  return g;
}

namespace {

// a_k = L^(k) / L.
std::vector<double> normalized_laplace(const std::vector<double>& g) {
  const std::size_t n = g.size();
  std::vector<double> a(n, 0.0);
  a[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    double binom = 1.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      acc += binom * a[j] * -g[k - j];
      binom = binom * static_cast<double>(k - 1 - j) / static_cast<double>(j + 1);
    }
    a[k] = acc;
  }
  return a;
}

}  // namespace

std::vector<double> laplace_from_exponent(const std::vector<double>& g) {
  if (g.empty()) throw ParameterError("empty exponent vector");
  std::vector<double> a = normalized_laplace(g);
  const double L = std::exp(-g[0]);
  for (double& x : a) x *= L;
  return a;
}

double InterferenceField::conditional_ccdf(double s, int m0) const {
  const std::vector<double> g = exponent_derivatives(s, m0 - 1);
  const std::vector<double> a = normalized_laplace(g);
  double sum = 0.0;
  double term = 1.0;
  for (int k = 0; k < m0; ++k) {
    if (k > 0) term *= -s / k;
    sum += term * a[static_cast<std::size_t>(k)];
  }
  return std::clamp(std::exp(-g[0]) * sum, 0.0, 1.0);
}

std::vector<double> conditional_laplace(double s, const InterfererDensity& density, const ChannelParams& ch,
                                        int k_max) {
  InterferenceField field(density, ch);
  return laplace_from_exponent(field.exponent_derivatives(s, k_max));
}

DensityProvider::DensityProvider(ServiceModel service, MobilityModelSpec model, double lambda0, double t_max,
                                 SeriesOptions series, WalkLawOptions walk)
    : service_(service), model_(std::move(model)), lambda0_(lambda0) {
  model_.validate();
  if (!(lambda0 > 0.0)) throw ParameterError("lambda0 must be positive");
  if (service_ == ServiceModel::UDM && (model_.kind == MobilityKind::RW || model_.kind == MobilityKind::RWP)) {
    disp_ = std::make_unique<DisplacementModel>(model_, series, walk, t_max);
  }
}

InterfererDensity DensityProvider::at(double u0, double t) const {
  if (service_ == ServiceModel::UIM) return uim_density(lambda0_, u0);
  switch (model_.kind) {
    case MobilityKind::SL: return sl_density(lambda0_, u0, model_.v, t);
    case MobilityKind::RS: return rs_density(lambda0_, u0, model_.v, t, *model_.flight);
    case MobilityKind::RW:
    case MobilityKind::RWP: return udm_density_general(lambda0_, u0, t, disp_->at(t));
  }
  throw ParameterError("unknown mobility model");
}

double DensityProvider::serving_distance(double u0, double t) const {
  if (service_ == ServiceModel::UIM) return u0;
  return std::max(0.0, u0 - model_.v * t);
}

RateEvaluator::RateEvaluator(ServiceModel service, MobilityModelSpec model, double lambda0, ChannelParams ch,
                             double t_max, RateOptions opts)
    : provider_(service, std::move(model), lambda0, t_max, opts.series, opts.walk), ch_(ch), opts_(opts) {
  ch_.validate();
}

RateResult RateEvaluator::average_rate(double t) const {
  if (!(t >= 0.0)) throw ParameterError("t must be non-negative");
  const double lambda0 = provider_.lambda0();
  RateResult res;
  res.u0_max = std::sqrt(std::log(1.0 / opts_.u0_tail) / (kPi * lambda0));
  const double tol = opts_.rel_tol;

  auto inner = [&](double u0) {
    u0 = std::max(u0, 1e-9);
    const InterfererDensity density = provider_.at(u0, t);
    const InterferenceField field(density, ch_, opts_.ux_nodes);
    const double d = provider_.serving_distance(u0, t);
    const double r0a = std::pow(d * d + ch_.h * ch_.h, 0.5 * ch_.alpha);
    auto ccdf = [&](double x) {
      ++res.evaluations;
      return field.conditional_ccdf(ch_.m0 * std::expm1(x) * r0a, ch_.m0);
    };
    double x_max = 1.0;
    while (ccdf(x_max) > opts_.ccdf_floor && x_max < 512.0) x_max *= 2.0;
    res.gamma_max = std::max(res.gamma_max, std::expm1(x_max));
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(ccdf, 0.0, x_max, 10, tol, &err);
    return v;
  };
  auto outer = [&](double u0) {
    return 2.0 * kPi * lambda0 * u0 * std::exp(-kPi * lambda0 * u0 * u0) * inner(u0);
  };

  std::vector<double> cuts{0.0};
  const double vt = provider_.model().v * t;
  if (provider_.service() == ServiceModel::UDM && vt > 0.0 && vt < res.u0_max) cuts.push_back(vt);
  cuts.push_back(res.u0_max);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    res.value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(outer, cuts[i], cuts[i + 1], 10, tol, &err);
    res.error += err;
  }
  if (!std::isfinite(res.value)) throw NumericalError("average rate quadrature failed", res.error);
  return res;
}

RateResult RateEvaluator::session_rate(double T) const {
  if (!(T > 0.0)) throw ParameterError("T must be positive");
  RateResult res;
  auto f = [&](double t) {
    const RateResult r = average_rate(t);
    res.u0_max = r.u0_max;
    res.gamma_max = std::max(res.gamma_max, r.gamma_max);
    res.evaluations += r.evaluations;
    return r.value;
  };
  double err = 0.0;
  res.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, T, 4, 1e-3, &err) / T;
  res.error = err / T;
  return res;
}

RateResult average_rate(const RateQuery& q, const RateOptions& opts) {
  return RateEvaluator(q.service, q.model, q.lambda0, q.channel, q.t, opts).average_rate(q.t);
}

RateResult session_rate(const RateQuery& q, double T, const RateOptions& opts) {
  return RateEvaluator(q.service, q.model, q.lambda0, q.channel, T, opts).session_rate(T);
}

}  // namespace dronenet
