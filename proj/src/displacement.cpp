// SPDX-License-Identifier: Apache-2.0
#include "dronenet/displacement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dronenet/error.hpp"
#include "dronenet/quadrature.hpp"

namespace dronenet {

namespace {

constexpr double kPi = std::numbers::pi;

// P_0..P_{n} at x.
void legendre_all(double x, int n, double* p) {
  p[0] = 1.0;
  if (n >= 1) p[1] = x;
  for (int k = 2; k <= n; ++k) p[k] = ((2.0 * k - 1.0) * x * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// TabulatedContinuous

TabulatedContinuous::TabulatedContinuous(double vt, int cells, int order, std::vector<double> g_values)
    : vt_(vt), cells_(cells), order_(order), du_(1.0 / cells), g_(std::move(g_values)) {
  if (!(vt_ > 0.0) || cells_ < 1) throw ParameterError("tabulated density needs vt > 0 and cells >= 1");
  if (g_.size() != static_cast<std::size_t>(cells_) * static_cast<std::size_t>(order_)) {
    throw ParameterError("tabulated density: node count mismatch");
  }
  const QuadratureRule& rule = gauss_legendre(order_);
  coef_.assign(g_.size(), 0.0);
  std::vector<double> p(static_cast<std::size_t>(order_) + 1);
  for (int c = 0; c < cells_; ++c) {
    for (int j = 0; j < order_; ++j) {
      legendre_all(rule.nodes[static_cast<std::size_t>(j)], order_ - 1, p.data());
      const double wg = rule.weights[static_cast<std::size_t>(j)] * g_[static_cast<std::size_t>(c * order_ + j)];
      for (int k = 0; k < order_; ++k) coef_[static_cast<std::size_t>(c * order_ + k)] += (2.0 * k + 1.0) / 2.0 * wg * p[static_cast<std::size_t>(k)];
    }
  }
  mass_up_.assign(static_cast<std::size_t>(cells_) + 1, 0.0);
  for (int c = cells_ - 1; c >= 0; --c) {
    mass_up_[static_cast<std::size_t>(c)] = mass_up_[static_cast<std::size_t>(c) + 1] + coef_[static_cast<std::size_t>(c * order_)] * du_;
  }
  total_ = mass_up_[0];
}

std::vector<double> TabulatedContinuous::node_positions(double vt, int cells, int order) {
  const QuadratureRule& rule = gauss_legendre(order);
  const double du = 1.0 / cells;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cells * order));
  for (int c = 0; c < cells; ++c) {
    for (int j = 0; j < order; ++j) {
      const double u = (c + 0.5 * (rule.nodes[static_cast<std::size_t>(j)] + 1.0)) * du;
      out.push_back(vt * (1.0 - u * u));
    }
  }
  return out;
}

std::vector<double> TabulatedContinuous::node_jacobians(double vt, int cells, int order) {
  const QuadratureRule& rule = gauss_legendre(order);
  const double du = 1.0 / cells;
  std::vector<double> out;
  for (int c = 0; c < cells; ++c) {
    for (int j = 0; j < order; ++j) {
      const double u = (c + 0.5 * (rule.nodes[static_cast<std::size_t>(j)] + 1.0)) * du;
      out.push_back(2.0 * vt * u);
    }
  }
  return out;
}

double TabulatedContinuous::u_of(double l) const {
  return std::sqrt(std::clamp(1.0 - l / vt_, 0.0, 1.0));
}

double TabulatedContinuous::g_at(int cell, double x) const {
  double p[32];
  legendre_all(x, order_ - 1, p);
  double acc = 0.0;
  for (int k = 0; k < order_; ++k) acc += coef_[static_cast<std::size_t>(cell * order_ + k)] * p[k];
  return acc;
}

double TabulatedContinuous::g_integral_from_left(int cell, double x) const {
  double p[34];
  legendre_all(x, order_, p);
  const double* a = &coef_[static_cast<std::size_t>(cell * order_)];
  double acc = a[0] * (x + 1.0);
  for (int k = 1; k < order_; ++k) acc += a[k] * (p[k + 1] - p[k - 1]) / (2.0 * k + 1.0);
  return acc * 0.5 * du_;
}

double TabulatedContinuous::pdf(double l) const {
  if (l < 0.0 || l >= vt_) return 0.0;
  const double u = u_of(l);
  if (u <= 0.0) return 0.0;
  const int c = std::min(cells_ - 1, static_cast<int>(u / du_));
  const double x = 2.0 * (u / du_ - c) - 1.0;
  return g_at(c, x) / (2.0 * vt_ * u);
}

double TabulatedContinuous::mass_below(double l) const {
  if (l <= 0.0) return 0.0;
  if (l >= vt_) return total_;
  const double u = u_of(l);
  const int c = std::min(cells_ - 1, static_cast<int>(u / du_));
  const double x = 2.0 * (u / du_ - c) - 1.0;
  const double cell_mass = mass_up_[static_cast<std::size_t>(c)] - mass_up_[static_cast<std::size_t>(c) + 1];
  return mass_up_[static_cast<std::size_t>(c) + 1] + (cell_mass - g_integral_from_left(c, x));
}

double TabulatedContinuous::integrate(double a, double b, const std::function<double(double)>& k) const {
  a = std::max(a, 0.0);
  b = std::min(b, vt_);
  if (!(b > a)) return 0.0;
  const double u_lo = u_of(b);
  const double u_hi = u_of(a);
  const QuadratureRule& rule = gauss_legendre(order_);
  const QuadratureRule& fine = gauss_legendre(16);
  const int c_lo = std::min(cells_ - 1, static_cast<int>(u_lo / du_));
  const int c_hi = std::min(cells_ - 1, static_cast<int>(u_hi / du_));
  double acc = 0.0;
  for (int c = c_lo; c <= c_hi; ++c) {
    const double left = c * du_;
    const double right = (c + 1) * du_;
    const double p0 = std::max(left, u_lo);
    const double p1 = std::min(right, u_hi);
    if (!(p1 > p0)) continue;
    if (p0 == left && p1 == right) {
      for (int j = 0; j < order_; ++j) {
        const double u = (c + 0.5 * (rule.nodes[static_cast<std::size_t>(j)] + 1.0)) * du_;
        acc += rule.weights[static_cast<std::size_t>(j)] * g_[static_cast<std::size_t>(c * order_ + j)] *
               k(vt_ * (1.0 - u * u)) * 0.5 * du_;
      }
    } else {
      // Cosine map clusters nodes at both ends of the partial cell.
      for (std::size_t j = 0; j < fine.nodes.size(); ++j) {
        const double th = 0.5 * kPi * (fine.nodes[j] + 1.0);
        const double u = p0 + (p1 - p0) * 0.5 * (1.0 - std::cos(th));
        const double du = (p1 - p0) * 0.5 * std::sin(th) * 0.5 * kPi;
        const double x = 2.0 * (u / du_ - c) - 1.0;
        acc += fine.weights[j] * g_at(c, x) * k(vt_ * (1.0 - u * u)) * du;
      }
    }
  }
  return acc;
}

void TabulatedContinuous::scale(double c) {
  for (double& x : g_) x *= c;
  for (double& x : coef_) x *= c;
  for (double& x : mass_up_) x *= c;
  total_ *= c;
}

// ---------------------------------------------------------------------------------------------
// NetDisplacementDistribution

NetDisplacementDistribution NetDisplacementDistribution::point_mass(double v, double t, double at, std::string label) {
  NetDisplacementDistribution d;
  d.v_ = v;
  d.t_ = t;
  d.atoms_ = {{at, 1.0}};
  d.raw_total_ = 1.0;
  d.label_ = std::move(label);
  return d;
}

NetDisplacementDistribution NetDisplacementDistribution::analytic(double v, double t, std::vector<Atom> atoms,
                                                                  Evaluator pdf, Evaluator mass_below,
                                                                  std::string label) {
  NetDisplacementDistribution d;
  d.v_ = v;
  d.t_ = t;
  d.atoms_ = std::move(atoms);
  d.pdf_ = std::move(pdf);
  d.mass_below_ = std::move(mass_below);
  d.label_ = std::move(label);
  double total = d.continuous_mass();
  for (const Atom& a : d.atoms_) total += a.mass;
  d.raw_total_ = total;
  return d;
}

NetDisplacementDistribution NetDisplacementDistribution::tabulated(double v, double t, std::vector<Atom> atoms,
                                                                   TabulatedContinuous continuous, std::string label,
                                                                   int series_terms, double raw_total) {
  NetDisplacementDistribution d;
  d.v_ = v;
  d.t_ = t;
  d.atoms_ = std::move(atoms);
  d.table_ = std::make_shared<const TabulatedContinuous>(std::move(continuous));
  d.label_ = std::move(label);
  d.series_terms_ = series_terms;
  d.raw_total_ = raw_total;
  return d;
}

double NetDisplacementDistribution::atom_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms_) {
    if (a.at == vt()) m += a.mass;
  }
  return m;
}

double NetDisplacementDistribution::pdf(double l) const {
  if (l < 0.0 || l >= vt()) return 0.0;
  if (table_) return table_->pdf(l);
  if (pdf_) return pdf_(l);
  return 0.0;
}

double NetDisplacementDistribution::continuous_mass() const {
  if (table_) return table_->total();
  if (mass_below_) return mass_below_(vt());
  return 0.0;
}

double NetDisplacementDistribution::cdf(double l) const {
  if (l < 0.0) return 0.0;
  if (l >= vt()) return 1.0;
  double c = 0.0;
  if (table_) c = table_->mass_below(l);
  else if (mass_below_) c = mass_below_(l);
  for (const Atom& a : atoms_) {
    if (a.at <= l) c += a.mass;
  }
  return std::clamp(c, 0.0, 1.0);
}

double NetDisplacementDistribution::cdf_left(double l) const {
  if (l <= 0.0) return 0.0;
  if (l > vt()) return 1.0;
  double c = 0.0;
  if (table_) c = table_->mass_below(l);
  else if (mass_below_) c = mass_below_(std::min(l, vt()));
  for (const Atom& a : atoms_) {
    if (a.at < l) c += a.mass;
  }
  return std::clamp(c, 0.0, 1.0);
}

double NetDisplacementDistribution::integrate_pdf(double a, double b, const Evaluator& k) const {
  a = std::max(a, 0.0);
  b = std::min(b, vt());
  if (!(b > a)) return 0.0;
  if (table_) return table_->integrate(a, b, k);
  if (!pdf_) return 0.0;
  // Cosine map removes square-root behaviour of k at both limits.
  const double half = 0.5 * (b - a);
  auto f = [&](double th) {
    const double l = a + half * (1.0 - std::cos(th));
    return pdf_(l) * k(l) * half * std::sin(th);
  };
  return integrate_adaptive(f, 0.0, kPi, 1e-11, 12).value;
}

// ---------------------------------------------------------------------------------------------
// Closed-form models

NetDisplacementDistribution sl_displacement(double v, double t) {
  if (!(t >= 0.0)) throw ParameterError("time must be non-negative");
  return NetDisplacementDistribution::point_mass(v, t, v * t, "SL");
}

NetDisplacementDistribution rs_displacement(const ScalarDistribution& flight, double v, double t) {
  if (!(t >= 0.0)) throw ParameterError("time must be non-negative");
  const double vt = v * t;
  if (vt == 0.0) return NetDisplacementDistribution::point_mass(v, t, 0.0, "RS");
  if (flight.is<Deterministic>()) {
    return NetDisplacementDistribution::point_mass(v, t, std::min(vt, flight.as<Deterministic>().value), "RS");
  }
  const double survive = flight.ccdf(vt);
  std::vector<Atom> atoms;
  if (survive > 0.0) atoms.push_back({vt, survive});
  return NetDisplacementDistribution::analytic(
      v, t, atoms, [flight](double l) { return flight.pdf(l); },
      [flight, vt](double l) { return flight.cdf(std::min(l, vt)); }, "RS");
}

NetDisplacementDistribution arc_displacement(double radius, double v, double t) {
  if (!(radius > 0.0)) throw ParameterError("arc radius must be positive");
  const double l = 2.0 * radius * std::abs(std::sin(v * t / (2.0 * radius)));
  return NetDisplacementDistribution::point_mass(v, t, std::min(l, v * t), "ARC");
}

// ---------------------------------------------------------------------------------------------
// Walk series

namespace {

struct WalkContext {
  const FlightWalkLaw& law;
  const SeriesOptions& opts;
  int terms;
  std::vector<double> sigma_z;  // per k
  bool conditioned;
};

WalkContext make_context(const FlightWalkLaw& law, const SeriesOptions& opts, int terms) {
  WalkContext ctx{law, opts, terms, {}, law.options().approx == JointApprox::IndependentConditioned};
  ctx.sigma_z.assign(static_cast<std::size_t>(terms) + 1, 0.0);
  for (int k = 1; k <= terms; ++k) ctx.sigma_z[static_cast<std::size_t>(k)] = law.sigma_Z(k);
  return ctx;
}

// Density contribution at l of walks whose current flight started after k completed flights
// of total length s, with path length m flown in all; weights[k] multiplies each k.
double walk_terms(const WalkContext& ctx, double l, double m, const std::vector<double>& weights) {
  if (!(l > 0.0) || !(m > l)) return 0.0;
  const ScalarDistribution& fr = ctx.law.flight();
  double total = 0.0;

  // One completed flight: position is fixed by the turn angle.
  if (weights[1] != 0.0) {
    const double integral = integrate_gl(
        [&](double th) {
          const double r = 0.5 * (m + l * std::cos(th));
          return fr.pdf(r) * fr.ccdf(m - r);
        },
        0.0, kPi, ctx.opts.theta_nodes);
    total += weights[1] * l / (kPi * std::sqrt(m * m - l * l)) * integral;
  }
  if (ctx.terms < 2) return total;

  const QuadratureRule& phi_rule = gauss_legendre(ctx.opts.phi_nodes);
  auto s_integrand = [&](double s) {
    const double d = m - s;
    const double survive = fr.ccdf(d);
    if (survive <= 0.0) return 0.0;
    double phi_max = kPi;
    if (l + d > s) {
      if (d <= 0.0) return 0.0;
      const double c = (l * l + d * d - s * s) / (2.0 * l * d);
      if (c >= 1.0) return 0.0;
      phi_max = std::acos(std::max(c, -1.0));
    }
    double acc = 0.0;
    // Two completed flights: joint density has an inverse square root at rho = s.
    if (weights[2] != 0.0) {
      double inner = 0.0;
      for (std::size_t j = 0; j < phi_rule.nodes.size(); ++j) {
        const double w = 0.5 * (phi_rule.nodes[j] + 1.0);
        const double phi = phi_max * (1.0 - w * w);
        const double rho = std::sqrt(std::max(l * l + d * d - 2.0 * l * d * std::cos(phi), 0.0));
        if (rho <= 0.0) continue;
        inner += phi_rule.weights[j] * ctx.law.joint(2, s, rho) / rho * 2.0 * phi_max * w;
      }
      acc += weights[2] * inner * 0.5;
    }
    for (int k = 3; k <= ctx.terms; ++k) {
      if (weights[static_cast<std::size_t>(k)] == 0.0) continue;
      const double fs = ctx.law.pdf_S(k, s);
      if (fs <= 0.0) continue;
      const double sz = ctx.sigma_z[static_cast<std::size_t>(k)];
      const double inv2 = 1.0 / (2.0 * sz * sz);
      double inner = 0.0;
      for (std::size_t j = 0; j < phi_rule.nodes.size(); ++j) {
        const double phi = 0.5 * phi_max * (phi_rule.nodes[j] + 1.0);
        const double rho2 = l * l + d * d - 2.0 * l * d * std::cos(phi);
        inner += phi_rule.weights[j] * std::exp(-rho2 * inv2);
      }
      inner *= 0.5 * phi_max / (sz * sz);
      double norm = 1.0;
      if (ctx.conditioned) {
        const double fz = -std::expm1(-s * s * inv2);
        norm = fz > 0.0 ? 1.0 / fz : 0.0;
      }
      acc += weights[static_cast<std::size_t>(k)] * fs * inner * norm;
    }
    return survive * acc * l / kPi;
  };
  const double s1 = 0.5 * (m - l);
  const double s2 = 0.5 * (m + l);
  total += integrate_graded(s_integrand, s1, s2, ctx.opts.s_nodes);
  total += integrate_graded(s_integrand, s2, m, ctx.opts.s_nodes);
  return total;
}

}  // namespace

int series_length(const FlightWalkLaw& law, double vt, double tail, int max_terms) {
  for (int k = 1; k <= max_terms + 1; ++k) {
    if (law.cdf_S(k, vt) < tail) return k - 1;
  }
  throw NumericalError("walk series did not reach its truncation bound", law.cdf_S(max_terms + 1, vt));
}

double rw_pdf_point(const FlightWalkLaw& law, double vt, double l, int terms, const SeriesOptions& opts) {
  if (!(l > 0.0 && l < vt) || terms < 1) return 0.0;
  const WalkContext ctx = make_context(law, opts, terms);
  std::vector<double> weights(static_cast<std::size_t>(terms) + 1, 1.0);
  return walk_terms(ctx, l, vt, weights);
}

namespace {

double rwp_pdf_with(const WalkContext& ctx, const WaitLaw& waits, double v, double t, double l) {
  const double vt = v * t;
  if (!(l > 0.0 && l < vt)) return 0.0;
  const ScalarDistribution& fr = ctx.law.flight();
  const int terms = ctx.terms;
  // First flight in progress after the initial hover.
  double total = waits.pdf_W(0, t - l / v) / v * fr.ccdf(l);
  if (terms < 1) return total;

  // Hovering after k completed flights.
  total += fr.pdf(l) * (waits.cdf_W(0, t - l / v) - waits.cdf_W(1, t - l / v));
  const QuadratureRule& qr = gauss_legendre(ctx.opts.hover_nodes);
  for (int k = 2; k <= terms; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < qr.nodes.size(); ++j) {
      const double q = 0.5 * (qr.nodes[j] + 1.0);
      const double s = l + (vt - l) * q * q;
      const double tau = t - s / v;
      const double dw = waits.cdf_W(k - 1, tau) - waits.cdf_W(k, tau);
      if (dw <= 0.0) continue;
      acc += qr.weights[j] * ctx.law.joint(k, s, l) * dw * 2.0 * (vt - l) * q;
    }
    total += 0.5 * acc;
  }

  // Flight k+1 in progress, started after hover total W_k; m is the path length flown by t.
  const QuadratureRule& mr = gauss_legendre(ctx.opts.m_nodes);
  std::vector<double> weights(static_cast<std::size_t>(terms) + 1, 0.0);
  double acc = 0.0;
  for (std::size_t j = 0; j < mr.nodes.size(); ++j) {
    const double q = 0.5 * (mr.nodes[j] + 1.0);
    const double m = l + (vt - l) * q * q;
    const double w = t - m / v;
    const double jac = 2.0 * (vt - l) * q / v;
    bool any = false;
    for (int k = 1; k <= terms; ++k) {
      const double fw = waits.pdf_W(k, w);
      weights[static_cast<std::size_t>(k)] = fw * jac;
      any = any || fw > 0.0;
    }
    if (!any) continue;
    acc += mr.weights[j] * walk_terms(ctx, l, m, weights);
  }
  total += 0.5 * acc;
  return total;
}

NetDisplacementDistribution tabulate(double v, double t, std::vector<Atom> atoms, const SeriesOptions& opts,
                                     int terms, const std::string& label,
                                     const std::function<double(double)>& pdf) {
  const double vt = v * t;
  const std::vector<double> ls = TabulatedContinuous::node_positions(vt, opts.cells, opts.order);
  const std::vector<double> jac = TabulatedContinuous::node_jacobians(vt, opts.cells, opts.order);
  std::vector<double> g(ls.size(), 0.0);
  const long n = static_cast<long>(ls.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = pdf(ls[static_cast<std::size_t>(i)]) * jac[static_cast<std::size_t>(i)];
  }
  TabulatedContinuous table(vt, opts.cells, opts.order, std::move(g));
  double atom_total = 0.0;
  for (const Atom& a : atoms) atom_total += a.mass;
  const double raw = table.total();
  if (opts.normalize && raw > 0.0) table.scale((1.0 - atom_total) / raw);
  return NetDisplacementDistribution::tabulated(v, t, std::move(atoms), std::move(table), label, terms,
                                               atom_total + raw);
}

}  // namespace

double rwp_pdf_point(const FlightWalkLaw& law, const WaitLaw& waits, double v, double t, double l, int terms,
                     const SeriesOptions& opts) {
  const WalkContext ctx = make_context(law, opts, terms);
  return rwp_pdf_with(ctx, waits, v, t, l);
}

NetDisplacementDistribution rw_displacement(const FlightWalkLaw& law, double v, double t, const SeriesOptions& opts) {
  if (!(t >= 0.0) || !(v > 0.0)) throw ParameterError("RW displacement needs t >= 0 and v > 0");
  const double vt = v * t;
  if (vt == 0.0) return NetDisplacementDistribution::point_mass(v, t, 0.0, "RW");
  const int terms = series_length(law, vt, opts.tail, opts.max_terms);
  const WalkContext ctx = make_context(law, opts, terms);
  std::vector<double> weights(static_cast<std::size_t>(std::max(terms, 2)) + 1, 1.0);
  for (std::size_t k = static_cast<std::size_t>(terms) + 1; k < weights.size(); ++k) weights[k] = 0.0;
  std::vector<Atom> atoms;
  const double survive = law.flight().ccdf(vt);
  if (survive > 0.0) atoms.push_back({vt, survive});
  auto dist = tabulate(v, t, atoms, opts, terms, "RW",
                       [&](double l) { return terms >= 1 ? walk_terms(ctx, l, vt, weights) : 0.0; });
  return dist;
}

NetDisplacementDistribution rwp_displacement(const FlightWalkLaw& law, const WaitLaw& waits, double v, double t,
                                             const SeriesOptions& opts) {
  if (!(t >= 0.0) || !(v > 0.0)) throw ParameterError("RWP displacement needs t >= 0 and v > 0");
  if (!waits.hover().has_density()) throw ParameterError("analytic RWP law needs a hover law with a density");
  const double vt = v * t;
  if (vt == 0.0) return NetDisplacementDistribution::point_mass(v, t, 0.0, "RWP");
  const int terms = std::max(1, series_length(law, vt, opts.tail, opts.max_terms));
  WalkContext ctx = make_context(law, opts, terms);
  std::vector<Atom> atoms;
  const double still = 1.0 - waits.cdf_W(0, t);
  if (still > 0.0) atoms.push_back({0.0, still});
  // Warm lazily built grids before the parallel fill.
  for (int k = 0; k <= terms; ++k) {
    waits.cdf_W(k, 0.5 * t);
    waits.pdf_W(k, 0.5 * t);
  }
  return tabulate(v, t, atoms, opts, terms, "RWP",
                  [&](double l) { return rwp_pdf_with(ctx, waits, v, t, l); });
}

// ---------------------------------------------------------------------------------------------
// DisplacementModel

DisplacementModel::DisplacementModel(MobilityModelSpec spec, SeriesOptions opts, WalkLawOptions walk, double t_max)
    : spec_(std::move(spec)), opts_(opts) {
  spec_.validate();
  if (spec_.kind == MobilityKind::RW || spec_.kind == MobilityKind::RWP) {
    if (walk.s_max <= 0.0 && t_max > 0.0) walk.s_max = spec_.v * t_max;
    law_ = std::make_unique<FlightWalkLaw>(*spec_.flight, walk);
  }
  if (spec_.kind == MobilityKind::RWP) waits_ = std::make_unique<WaitLaw>(*spec_.hover, t_max);
}

std::shared_ptr<const NetDisplacementDistribution> DisplacementModel::at(double t) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
  }
  NetDisplacementDistribution d = [&] {
    switch (spec_.kind) {
      case MobilityKind::SL: return sl_displacement(spec_.v, t);
      case MobilityKind::RS: return rs_displacement(*spec_.flight, spec_.v, t);
      case MobilityKind::RW: return rw_displacement(*law_, spec_.v, t, opts_);
      case MobilityKind::RWP: return rwp_displacement(*law_, *waits_, spec_.v, t, opts_);
    }
    throw ParameterError("unknown mobility model");
  }();
  auto ptr = std::make_shared<const NetDisplacementDistribution>(std::move(d));
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(t, ptr).first->second;
}

}  // namespace dronenet
