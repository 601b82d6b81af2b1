// SPDX-License-Identifier: Apache-2.0
#include "dronenet/walk_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "dronenet/error.hpp"
#include "dronenet/quadrature.hpp"

namespace dronenet {

namespace {

double erlang_pdf(int k, double stage_mean, double x) {
  if (x <= 0.0) return k == 1 ? (x == 0.0 ? 1.0 / stage_mean : 0.0) : 0.0;
  return boost::math::gamma_p_derivative(static_cast<double>(k), x / stage_mean) / stage_mean;
}

double erlang_cdf(int k, double stage_mean, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(static_cast<double>(k), x / stage_mean);
}

// exp(-x) I_nu(x) for x >= 0.
double scaled_bessel_i(int nu, double x) {
  if (x < 500.0) return boost::math::cyl_bessel_i(nu, x) * std::exp(-x);
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 8; ++k) {
    term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    sum += term;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double GridDensity::pdf_at(double x) const {
  if (x < 0.0 || pdf.empty()) return 0.0;
  const double u = x / step;
  const std::size_t i = static_cast<std::size_t>(u);
  if (i + 1 >= pdf.size()) return 0.0;
  const double f = u - static_cast<double>(i);
  return (1.0 - f) * pdf[i] + f * pdf[i + 1];
}

double GridDensity::cdf_at(double x) const {
  if (x <= 0.0 || cdf.empty()) return 0.0;
  const double u = x / step;
  const std::size_t i = static_cast<std::size_t>(u);
  if (i + 1 >= cdf.size()) return cdf.back();
  const double f = u - static_cast<double>(i);
  // Exact integral of the linear interpolant within the cell.
  return cdf[i] + step * (f * pdf[i] + 0.5 * f * f * (pdf[i + 1] - pdf[i]));
}

std::vector<GridDensity> convolution_powers(const ScalarDistribution& d, int k_max, double x_max) {
  if (!d.has_density()) throw ParameterError("grid convolution needs a law with a density");
  if (!(x_max > 0.0)) throw ParameterError("grid convolution needs a positive range");
  const double h = d.mean() / 200.0;
  const std::size_t m = static_cast<std::size_t>(std::ceil(x_max / h)) + 2;
  std::vector<GridDensity> out;
  std::vector<double> base(m);
  for (std::size_t i = 0; i < m; ++i) base[i] = d.pdf(static_cast<double>(i) * h);
  std::vector<double> cur = base;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) {
      std::vector<double> next(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
          const double w = (j == 0 || j == i) ? 0.5 : 1.0;
          acc += w * cur[j] * base[i - j];
        }
        next[i] = acc * h;
      }
      cur.swap(next);
    }
    GridDensity g;
    g.step = h;
    g.pdf = cur;
    g.cdf.assign(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) g.cdf[i] = g.cdf[i - 1] + 0.5 * h * (cur[i - 1] + cur[i]);
    out.push_back(std::move(g));
  }
  return out;
}

FlightWalkLaw::FlightWalkLaw(ScalarDistribution flight, WalkLawOptions opts)
    : flight_(flight), opts_(opts) {
  if (!flight_.has_density()) throw ParameterError("walk laws need a flight law with a density");
}

const RayleighSumFit* FlightWalkLaw::rayleigh_fit(int n) const {
  if (!flight_.is<Rayleigh>() || n < 2) return nullptr;
  if (n >= static_cast<int>(fit_ready_.size())) throw ParameterError("walk length above supported maximum");
  if (const RayleighSumFit* ready = fit_ready_[static_cast<std::size_t>(n)].load(std::memory_order_acquire)) {
    return ready;
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto it = fits_.find(n);
  if (it == fits_.end()) {
    // Fits are computed in sigma = 1 units from a fixed stream, then rescaled.
    Rng rng(opts_.fit_seed, static_cast<std::uint64_t>(n));
    RayleighSumFit unit = fit_rayleigh_sum(n, 1.0, rng, opts_.fit);
    const double sigma = flight_.as<Rayleigh>().sigma;
    unit.sigma = sigma;
    unit.a2 *= sigma;
    unit.b = rayleigh_sum_b(n, sigma);
    unit.rms_residual /= sigma;
    it = fits_.emplace(n, std::make_unique<RayleighSumFit>(unit)).first;
  }
  fit_ready_[static_cast<std::size_t>(n)].store(it->second.get(), std::memory_order_release);
  return it->second.get();
}

const GridDensity& FlightWalkLaw::grid_S(int n) const {
  if (n >= static_cast<int>(grid_ready_.size())) throw ParameterError("walk length above supported maximum");
  if (const GridDensity* ready = grid_ready_[static_cast<std::size_t>(n)].load(std::memory_order_acquire)) {
    return *ready;
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto it = grids_.find(n);
  if (it != grids_.end()) return *it->second;
  if (!(opts_.s_max > 0.0)) throw ParameterError("this flight law needs WalkLawOptions::s_max for S_n");
  auto all = convolution_powers(flight_, n, opts_.s_max);
  for (int k = 1; k <= n; ++k) {
    if (!grids_.count(k)) grids_.emplace(k, std::make_unique<GridDensity>(std::move(all[k - 1])));
    grid_ready_[static_cast<std::size_t>(k)].store(grids_.at(k).get(), std::memory_order_release);
  }
  return *grids_.at(n);
}

double FlightWalkLaw::pdf_S(int n, double s) const {
  if (n < 1) throw ParameterError("n must be >= 1");
  if (s <= 0.0) return 0.0;
  if (n == 1) return flight_.pdf(s);
  if (flight_.is<Rayleigh>()) return std::max(0.0, rayleigh_fit(n)->pdf(s));
  if (flight_.is<Exponential>()) return erlang_pdf(n, flight_.as<Exponential>().mean, s);
  if (flight_.is<Erlang>()) {
    const auto& e = flight_.as<Erlang>();
    return erlang_pdf(n * e.shape, e.stage_mean, s);
  }
  return grid_S(n).pdf_at(s);
}

double FlightWalkLaw::cdf_S(int n, double s) const {
  if (n < 1) throw ParameterError("n must be >= 1");
  if (s <= 0.0) return 0.0;
  if (n == 1) return flight_.cdf(s);
  if (flight_.is<Rayleigh>()) return rayleigh_fit(n)->cdf(s);
  if (flight_.is<Exponential>()) return erlang_cdf(n, flight_.as<Exponential>().mean, s);
  if (flight_.is<Erlang>()) {
    const auto& e = flight_.as<Erlang>();
    return erlang_cdf(n * e.shape, e.stage_mean, s);
  }
  return std::min(1.0, grid_S(n).cdf_at(s));
}

double FlightWalkLaw::sigma_Z(int n) const { return std::sqrt(n * flight_.second_moment() / 2.0); }

double FlightWalkLaw::pdf_Z(int n, double z) const {
  if (n == 1) return flight_.pdf(z);
  return rayleigh_pdf(z, sigma_Z(n));
}

double FlightWalkLaw::cdf_Z(int n, double z) const {
  if (n == 1) return flight_.cdf(z);
  return rayleigh_cdf(z, sigma_Z(n));
}

double FlightWalkLaw::joint2_quadrature(double s, double z) const {
  if (!(s > 0.0) || z < 0.0 || z >= s) return 0.0;
  const double integral = integrate_gl(
      [&](double th) {
        const double c = z * std::cos(th);
        return flight_.pdf(0.5 * (s + c)) * flight_.pdf(0.5 * (s - c));
      },
      0.0, std::numbers::pi, opts_.theta_nodes);
  return z / (std::numbers::pi * std::sqrt(s * s - z * z)) * integral;
}

double FlightWalkLaw::joint(int n, double s, double z) const {
  if (n < 2) throw ParameterError("joint(S_n, Z_n) needs n >= 2; n = 1 is the line density f_R");
  if (!(s > 0.0) || z < 0.0 || z >= s) return 0.0;
  if (n == 2) {
    if (!flight_.is<Rayleigh>()) return joint2_quadrature(s, z);
    const double sigma = flight_.as<Rayleigh>().sigma;
    const double s2 = sigma * sigma;
    const double x = z * z / (8.0 * s2);
    const double i0 = scaled_bessel_i(0, x);
    const double i1 = scaled_bessel_i(1, x);
    return z / (4.0 * s2 * s2 * std::sqrt(s * s - z * z)) * std::exp(-s * s / (4.0 * s2)) *
           (s * s * i0 - 0.5 * z * z * (i0 - i1));
  }
  const double base = pdf_S(n, s) * pdf_Z(n, z);
  if (opts_.approx == JointApprox::IndependentConditioned) {
    const double fz = cdf_Z(n, s);
    return fz > 0.0 ? base / fz : 0.0;
  }
  return base;
}

double joint_sz(const FlightWalkLaw& law, int n, double s, double z) { return law.joint(n, s, z); }

WaitLaw::WaitLaw(ScalarDistribution hover, double t_max) : hover_(hover), t_max_(t_max) {}

const GridDensity& WaitLaw::grid_W(int n) const {
  if (n >= static_cast<int>(grid_ready_.size())) throw ParameterError("hover count above supported maximum");
  if (const GridDensity* ready = grid_ready_[static_cast<std::size_t>(n)].load(std::memory_order_acquire)) {
    return *ready;
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto it = grids_.find(n);
  if (it != grids_.end()) return *it->second;
  if (!(t_max_ > 0.0)) throw ParameterError("WaitLaw needs a positive time range for grid convolution");
  auto all = convolution_powers(hover_, n + 1, t_max_);
  for (int k = 0; k <= n; ++k) {
    if (!grids_.count(k)) grids_.emplace(k, std::make_unique<GridDensity>(std::move(all[k])));
    grid_ready_[static_cast<std::size_t>(k)].store(grids_.at(k).get(), std::memory_order_release);
  }
  return *grids_.at(n);
}

double WaitLaw::pdf_W(int n, double w) const {
  if (n < 0) throw ParameterError("W_n needs n >= 0");
  if (hover_.is<Exponential>()) return erlang_pdf(n + 1, hover_.as<Exponential>().mean, w);
  if (hover_.is<Erlang>()) {
    const auto& e = hover_.as<Erlang>();
    return erlang_pdf((n + 1) * e.shape, e.stage_mean, w);
  }
  if (!hover_.has_density()) throw ParameterError("hover law has no density");
  if (n == 0) return hover_.pdf(w);
  return grid_W(n).pdf_at(w);
}

double WaitLaw::cdf_W(int n, double w) const {
  if (n < 0) throw ParameterError("W_n needs n >= 0");
  if (hover_.is<Exponential>()) return erlang_cdf(n + 1, hover_.as<Exponential>().mean, w);
  if (hover_.is<Erlang>()) {
    const auto& e = hover_.as<Erlang>();
    return erlang_cdf((n + 1) * e.shape, e.stage_mean, w);
  }
  if (hover_.is<Deterministic>()) return w >= (n + 1) * hover_.as<Deterministic>().value ? 1.0 : 0.0;
  if (n == 0) return hover_.cdf(w);
  return std::min(1.0, grid_W(n).cdf_at(w));
}

}  // namespace dronenet
