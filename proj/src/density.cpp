// SPDX-License-Identifier: Apache-2.0
#include "dronenet/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dronenet/error.hpp"
#include "dronenet/ppp.hpp"
#include "dronenet/quadrature.hpp"

namespace dronenet {

namespace {

constexpr double kPi = std::numbers::pi;

double acos_clamped(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

// Removes quadrature round-off at the ends of [0, 1]; larger excursions are kept visible.
double snap_unit(double x) {
  if (x < 0.0 && x > -1e-9) return 0.0;
  if (x > 1.0 && x < 1.0 + 1e-9) return 1.0;
  return x;
}

// Integral of g over [a, b] after the map l = a + (b - a)(1 - cos th) / 2.
template <class G>
double integrate_cos_mapped(const G& g, double a, double b, double tol = 1e-11) {
  if (!(b > a)) return 0.0;
  const double half = 0.5 * (b - a);
  auto f = [&](double th) { return g(a + half * (1.0 - std::cos(th))) * half * std::sin(th); };
  return integrate_adaptive(f, 0.0, kPi, tol, 12).value;
}

}  // namespace

std::string to_string(ServiceModel s) { return s == ServiceModel::UIM ? "UIM" : "UDM"; }

ServiceModel service_model_from_string(const std::string& name) {
  if (name == "UIM") return ServiceModel::UIM;
  if (name == "UDM") return ServiceModel::UDM;
  throw ParameterError("unknown service model '" + name + "'");
}

double circle_fraction_inside(double l, double ux, double u0) {
  if (l < u0 - ux) return 1.0;
  if (l <= ux - u0 || l >= ux + u0) return 0.0;
  return acos_clamped((l * l + ux * ux - u0 * u0) / (2.0 * l * ux)) / kPi;
}

InterfererDensity InterfererDensity::homogeneous(double lambda0) {
  if (!(lambda0 > 0.0)) throw ParameterError("lambda0 must be positive");
  InterfererDensity d;
  d.form_ = Form::Uniform;
  d.lambda0_ = lambda0;
  return d;
}

InterfererDensity InterfererDensity::uim(double lambda0, double u0_t) {
  if (!(lambda0 > 0.0)) throw ParameterError("lambda0 must be positive");
  if (!(u0_t >= 0.0)) throw ParameterError("serving distance must be non-negative");
  InterfererDensity d;
  d.form_ = u0_t > 0.0 ? Form::UimExclusion : Form::Uniform;
  d.lambda0_ = lambda0;
  d.u0_ = u0_t;
  return d;
}

InterfererDensity InterfererDensity::udm_general(double lambda0, double u0, double t,
                                                 std::shared_ptr<const NetDisplacementDistribution> disp) {
  if (!(lambda0 > 0.0)) throw ParameterError("lambda0 must be positive");
  if (!(u0 >= 0.0) || !(t >= 0.0)) throw ParameterError("u0 and t must be non-negative");
  if (!disp) throw ParameterError("displacement law missing");
  if (std::abs(disp->t() - t) > 1e-12 * std::max(1.0, t)) {
    throw ConsistencyError("displacement law time does not match the density time");
  }
  for (const Atom& a : disp->atoms()) {
    if (a.at > disp->vt() * (1.0 + 1e-12)) throw ConsistencyError("displacement support exceeds vt");
  }
  InterfererDensity d;
  d.form_ = Form::General;
  d.lambda0_ = lambda0;
  d.u0_ = u0;
  d.t_ = t;
  d.vt_ = disp->vt();
  d.disp_ = std::move(disp);
  return d;
}

InterfererDensity InterfererDensity::sl(double lambda0, double u0, double v, double t) {
  if (!(lambda0 > 0.0) || !(v > 0.0)) throw ParameterError("lambda0 and v must be positive");
  if (!(u0 >= 0.0) || !(t >= 0.0)) throw ParameterError("u0 and t must be non-negative");
  InterfererDensity d;
  d.form_ = Form::StraightLine;
  d.lambda0_ = lambda0;
  d.u0_ = u0;
  d.t_ = t;
  d.vt_ = v * t;
  return d;
}

InterfererDensity InterfererDensity::rs(double lambda0, double u0, double v, double t, ScalarDistribution flight) {
  InterfererDensity d = sl(lambda0, u0, v, t);
  d.form_ = Form::RandomStop;
  d.flight_ = flight;
  return d;
}

double InterfererDensity::beta_general(double ux) const {
  const NetDisplacementDistribution& L = *disp_;
  double inside = 0.0;
  for (const Atom& a : L.atoms()) inside += a.mass * circle_fraction_inside(a.at, ux, u0_);
  const double a = std::abs(ux - u0_);
  const double b = std::min(ux + u0_, vt_);
  if (u0_ - ux > 0.0) {
    // Continuous mass strictly inside: the whole circle of radius l stays in the exclusion zone.
    inside += L.cdf_left(u0_ - ux) - [&] {
      double m = 0.0;
      for (const Atom& at : L.atoms()) {
        if (at.at < u0_ - ux) m += at.mass;
      }
      return m;
    }();
  }
  if (ux > 0.0 && b > a) {
    inside += L.integrate_pdf(a, b, [&](double l) {
      return acos_clamped((l * l + ux * ux - u0_ * u0_) / (2.0 * l * ux)) / kPi;
    });
  }
  return snap_unit(1.0 - inside);
}

double InterfererDensity::beta_sl(double ux) const {
  if (ux >= u0_ + vt_) return 1.0;
  if (ux >= std::abs(u0_ - vt_)) {
    if (ux <= 0.0 || vt_ <= 0.0) return vt_ >= u0_ ? 1.0 : 0.0;
    return acos_clamped((u0_ * u0_ - ux * ux - vt_ * vt_) / (2.0 * ux * vt_)) / kPi;
  }
  return vt_ >= u0_ ? 1.0 : 0.0;
}

double InterfererDensity::beta_rs(double ux) const {
  const ScalarDistribution& fr = *flight_;
  if (ux <= 1e-12 * std::max(1.0, u0_)) {
    const double fl = u0_ <= vt_ ? fr.cdf(u0_) : 1.0;
    return std::clamp(1.0 - fl, 0.0, 1.0);
  }
  const double r = std::min(vt_, ux + u0_);
  const double lo = std::abs(ux - u0_);
  auto kern = [&](double l) { return acos_clamped((u0_ * u0_ - ux * ux - l * l) / (2.0 * ux * l)) / kPi; };
  double beta = ux > u0_ ? fr.cdf(ux - u0_) : 0.0;
  if (r > 0.0) beta += fr.ccdf(r) * kern(r);
  if (r > lo) beta += integrate_cos_mapped([&](double l) { return fr.pdf(l) * kern(l); }, lo, r);
  return snap_unit(beta);
}

double InterfererDensity::beta(double ux) const {
  switch (form_) {
    case Form::General: return beta_general(ux);
    case Form::StraightLine: return beta_sl(ux);
    case Form::RandomStop: return beta_rs(ux);
    default: throw ParameterError("beta is defined for UE-dependent densities only");
  }
}

double InterfererDensity::ratio(double ux) const {
  if (ux < 0.0) throw RangeError("ux must be non-negative");
  switch (form_) {
    case Form::Uniform: return 1.0;
    case Form::UimExclusion: return ux > u0_ ? 1.0 : 0.0;
    default: break;
  }
  if (ux >= u0_ + vt_) return 1.0;
  if (ux >= std::abs(u0_ - vt_)) return beta(ux);
  // Inside |u0 - vt|: empty while the serving drone is still approaching (right-continuous in t).
  return vt_ >= u0_ ? beta(ux) : 0.0;
}

std::vector<double> InterfererDensity::breakpoints() const {
  std::vector<double> out;
  switch (form_) {
    case Form::Uniform: break;
    case Form::UimExclusion: out.push_back(u0_); break;
    default:
      out.push_back(std::abs(u0_ - vt_));
      out.push_back(u0_ + vt_);
      out.push_back(u0_);
      if (disp_) {
        for (const Atom& a : disp_->atoms()) {
          out.push_back(std::abs(u0_ - a.at));
          out.push_back(u0_ + a.at);
        }
      }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double InterfererDensity::homogeneous_beyond() const {
  switch (form_) {
    case Form::Uniform: return 0.0;
    case Form::UimExclusion: return u0_;
    default: return u0_ + vt_;
  }
}

InterfererDensity uim_density(double lambda0, double u0_t) { return InterfererDensity::uim(lambda0, u0_t); }

InterfererDensity udm_density_general(double lambda0, double u0, double t,
                                      std::shared_ptr<const NetDisplacementDistribution> disp) {
  return InterfererDensity::udm_general(lambda0, u0, t, std::move(disp));
}

InterfererDensity sl_density(double lambda0, double u0, double v, double t) {
  return InterfererDensity::sl(lambda0, u0, v, t);
}

InterfererDensity rs_density(double lambda0, double u0, double v, double t, const ScalarDistribution& flight) {
  return InterfererDensity::rs(lambda0, u0, v, t, flight);
}

namespace {

// 2 pi * integral of u ratio(u) over [a, b], split at breakpoints.
double radial_mass(const InterfererDensity& density, double a, double b) {
  std::vector<double> cuts{a};
  for (double p : density.breakpoints()) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const double beyond = density.homogeneous_beyond();
    if (lo >= beyond && density.form() != InterfererDensity::Form::UimExclusion) {
      total += kPi * (hi * hi - lo * lo);
      continue;
    }
    total += 2.0 * kPi * integrate_cos_mapped([&](double u) { return u * density.ratio(u); }, lo, hi, 1e-12);
  }
  return total;
}

}  // namespace

double intensity_measure(const InterfererDensity& density, double radius) {
  if (!(radius > 0.0)) throw ParameterError("radius must be positive");
  return density.lambda0() * radial_mass(density, 0.0, radius);
}

std::vector<double> binned_ratio(const InterfererDensity& density, const std::vector<double>& edges) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double area = kPi * (edges[i + 1] * edges[i + 1] - edges[i] * edges[i]);
    out.push_back(radial_mass(density, edges[i], edges[i + 1]) / area);
  }
  return out;
}

RadialHistogram empirical_density_oracle(const MobilityModelSpec& model, double lambda0, double u0, double t,
                                         const OracleOptions& opts, const Rng& rng) {
  model.validate();
  if (!(lambda0 > 0.0) || !(u0 > 0.0) || !(t >= 0.0)) throw ParameterError("oracle needs lambda0, u0 > 0, t >= 0");
  if (opts.realizations < 1 || opts.bins < 1) throw ParameterError("oracle needs realizations >= 1 and bins >= 1");
  const double vt = model.v * t;
  const double u_max = u0 + vt;
  const int bins = opts.bins;
  const double width = u_max / bins;
  const bool complement = opts.construction == OracleConstruction::Complement;
  const Disc window{{0.0, 0.0}, complement ? u0 : u_max + vt};

  std::vector<long long> sum(static_cast<std::size_t>(bins), 0);
  std::vector<long long> sum_sq(static_cast<std::size_t>(bins), 0);
  const long n_real = opts.realizations;

  auto run_one = [&](long r, std::vector<long long>& counts) {
    std::fill(counts.begin(), counts.end(), 0);
    Rng rr = rng.split(static_cast<std::uint64_t>(r));
    const PlanarPointSet pts = sample_ppp(lambda0, window, rr);
    for (const Point& p : pts.points) {
      if (!complement && norm(p) < u0) continue;
      Point q = p;
      if (t > 0.0) q = build_trajectory(model, p, t, rr).position_at(t);
      const double d = norm(q);
      if (d >= u_max) continue;
      const int bin = std::min(bins - 1, static_cast<int>(d / width));
      ++counts[static_cast<std::size_t>(bin)];
    }
  };

  if (opts.parallel) {
#pragma omp parallel
    {
      std::vector<long long> counts(static_cast<std::size_t>(bins));
      std::vector<long long> local_sum(static_cast<std::size_t>(bins), 0);
      std::vector<long long> local_sq(static_cast<std::size_t>(bins), 0);
#pragma omp for schedule(static)
      for (long r = 0; r < n_real; ++r) {
        run_one(r, counts);
        for (int i = 0; i < bins; ++i) {
          local_sum[static_cast<std::size_t>(i)] += counts[static_cast<std::size_t>(i)];
          local_sq[static_cast<std::size_t>(i)] += counts[static_cast<std::size_t>(i)] * counts[static_cast<std::size_t>(i)];
        }
      }
      // Integer sums are exact, so the merge order does not affect the result.
#pragma omp critical
      for (int i = 0; i < bins; ++i) {
        sum[static_cast<std::size_t>(i)] += local_sum[static_cast<std::size_t>(i)];
        sum_sq[static_cast<std::size_t>(i)] += local_sq[static_cast<std::size_t>(i)];
      }
    }
  } else {
    std::vector<long long> counts(static_cast<std::size_t>(bins));
    for (long r = 0; r < n_real; ++r) {
      run_one(r, counts);
      for (int i = 0; i < bins; ++i) {
        sum[static_cast<std::size_t>(i)] += counts[static_cast<std::size_t>(i)];
        sum_sq[static_cast<std::size_t>(i)] += counts[static_cast<std::size_t>(i)] * counts[static_cast<std::size_t>(i)];
      }
    }
  }

  RadialHistogram h;
  h.realizations = n_real;
  for (int i = 0; i <= bins; ++i) h.edges.push_back(i * width);
  const double R = static_cast<double>(n_real);
  for (int i = 0; i < bins; ++i) {
    const double area = kPi * (h.edges[static_cast<std::size_t>(i) + 1] * h.edges[static_cast<std::size_t>(i) + 1] -
                               h.edges[static_cast<std::size_t>(i)] * h.edges[static_cast<std::size_t>(i)]);
    const double mean = static_cast<double>(sum[static_cast<std::size_t>(i)]) / R;
    const double var = std::max(0.0, static_cast<double>(sum_sq[static_cast<std::size_t>(i)]) / R - mean * mean);
    const double scale = 1.0 / (lambda0 * area);
    h.ratio.push_back(complement ? 1.0 - mean * scale : mean * scale);
    h.std_error.push_back(std::sqrt(var / R) * scale);
  }
  return h;
}

}  // namespace dronenet
