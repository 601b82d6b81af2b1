// SPDX-License-Identifier: Apache-2.0
#include "dronenet/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>

#include "dronenet/density.hpp"
#include "dronenet/displacement.hpp"
#include "dronenet/distributions.hpp"
#include "dronenet/error.hpp"
#include "dronenet/experiment.hpp"
#include "dronenet/rate.hpp"
#include "dronenet/simulator.hpp"
#include "dronenet/statistics.hpp"

namespace dronenet {

ValidationScale ValidationScale::full() { return ValidationScale{}; }

ValidationScale ValidationScale::quick() {
  ValidationScale s;
  s.name = "quick";
  s.trajectories = 20000;
  s.density_realizations = 20000;  // criterion 3 sets this floor
  s.closure_samples = 20000;
  s.dispersion_realizations = 2000;
  s.rate_realizations = 2000;
  return s;
}

ValidationScale ValidationScale::from_name(const std::string& name) {
  if (name == "full") return full();
  if (name == "quick") return quick();
  throw ConfigError("unknown validation scale '" + name + "'");
}

namespace {

constexpr double kV = 12.5;
constexpr double kFlightMean = 500.0;
constexpr double kHoverMean = 5.0;

ScalarDistribution flights() { return ScalarDistribution::rayleigh_mean(kFlightMean); }

MobilityModelSpec paper_model(MobilityKind kind) {
  switch (kind) {
    case MobilityKind::SL: return MobilityModelSpec::sl(kV);
    case MobilityKind::RS: return MobilityModelSpec::rs(kV, flights());
    case MobilityKind::RW: return MobilityModelSpec::rw(kV, flights());
    case MobilityKind::RWP: return MobilityModelSpec::rwp(kV, flights(), ScalarDistribution::exponential(kHoverMean));
  }
  throw ParameterError("unknown mobility model");
}

const MobilityKind kAllModels[] = {MobilityKind::SL, MobilityKind::RS, MobilityKind::RW, MobilityKind::RWP};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string label(MobilityKind k, const char* what, double x) { return to_string(k) + " " + fmt(what, x); }

CheckResult at_most(int criterion, std::string id, std::string name, double value, double threshold,
                    std::string detail = {}) {
  return {criterion, std::move(id), std::move(name), value, threshold, "<=", value <= threshold, std::move(detail)};
}

CheckResult at_least(int criterion, std::string id, std::string name, double value, double threshold,
                     std::string detail = {}) {
  return {criterion, std::move(id), std::move(name), value, threshold, ">=", value >= threshold, std::move(detail)};
}

Rng stream(std::uint64_t seed, int criterion) { return Rng(seed, 0xC0DE0000ULL + static_cast<std::uint64_t>(criterion)); }

double second_moment(const NetDisplacementDistribution& law) {
  double m2 = 0.0;
  for (const Atom& a : law.atoms()) m2 += a.mass * a.at * a.at;
  return m2 + law.integrate_pdf(0.0, law.vt(), [](double l) { return l * l; });
}

}  // namespace

std::vector<CheckResult> check_displacement_laws(const ValidationScale& s, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const Rng root = stream(seed, 1);
  for (MobilityKind kind : {MobilityKind::RW, MobilityKind::RWP}) {
    const MobilityModelSpec spec = paper_model(kind);
    const DisplacementModel model(spec, {}, {}, 300.0);
    int ti = 0;
    for (double t : {50.0, 100.0, 300.0}) {
      const auto law = model.at(t);
      const auto samples = sample_net_displacement(spec, t, s.trajectories,
                                                   root.split(static_cast<std::uint64_t>(kind) * 10 + ti++));
      const double ks = ks_statistic(samples, [&](double x) { return law->cdf(x); },
                                     [&](double x) { return law->cdf_left(x); });
      out.push_back(at_most(1, "1", "KS analytic vs MC " + label(kind, "t=%g s", t), ks, 0.02,
                            "n=" + std::to_string(s.trajectories) + " terms=" + std::to_string(law->series_terms())));
    }
  }
  return out;
}

std::vector<CheckResult> check_rayleigh_asymptotics(const ValidationScale&, std::uint64_t) {
  const DisplacementModel model(paper_model(MobilityKind::RW), {}, {}, 300.0);
  const auto law = model.at(300.0);
  const double sigma = std::sqrt(0.5 * second_moment(*law));
  const double vt = law->vt();
  double d = 0.0;
  const int n = 6000;
  for (int i = 0; i <= n; ++i) {
    const double l = vt * i / n;
    const double g = rayleigh_cdf(l, sigma);
    d = std::max({d, std::abs(law->cdf(l) - g), std::abs(law->cdf_left(l) - g)});
  }
  d = std::max(d, 1.0 - rayleigh_cdf(vt, sigma));
  return {at_most(2, "2", "KS analytic RW L(300 s) vs moment-fitted Rayleigh", d, 0.03, fmt("sigma=%.2f m", sigma))};
}

std::vector<CheckResult> check_density_profiles(const ValidationScale& s, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const Rng root = stream(seed, 3);
  const double u0 = 500.0;
  for (MobilityKind kind : kAllModels) {
    const MobilityModelSpec spec = paper_model(kind);
    const DensityProvider provider(ServiceModel::UDM, spec, 1e-6, 200.0);
    int ti = 0;
    for (double t : {20.0, 40.0, 50.0, 200.0}) {
      OracleOptions opts;
      opts.realizations = s.density_realizations;
      opts.bins = 50;
      const RadialHistogram h = empirical_density_oracle(
          spec, 1e-3, u0, t, opts, root.split(static_cast<std::uint64_t>(kind) * 10 + ti++));
      const std::vector<double> analytic = binned_ratio(provider.at(u0, t), h.edges);
      double worst = 0.0;
      double se = 0.0;
      for (std::size_t b = 0; b < analytic.size(); ++b) {
        const double dev = std::abs(analytic[b] - h.ratio[b]);
        if (dev > worst) {
          worst = dev;
          se = h.std_error[b];
        }
      }
      out.push_back(at_most(3, "3", "density sup-deviation " + label(kind, "t=%g s", t), worst, 0.03,
                            "realizations=" + std::to_string(s.density_realizations) + fmt(" se_at_max=%.4f", se)));
    }
  }
  return out;
}

std::vector<CheckResult> check_exact_closures(const ValidationScale& s, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const Rng root = stream(seed, 4);
  const ScalarDistribution ray = flights();
  const double sigma = std::get<Rayleigh>(ray.variant()).sigma;
  const WalkEndpoints w = sample_walk_endpoints(ray, 5, s.closure_samples, root.split(1));
  const double ks = ks_statistic(w.z, [&](double x) { return rayleigh_cdf(x, sigma * std::sqrt(5.0)); });
  out.push_back(at_most(4, "4a", "KS Z_5 vs Rayleigh(sigma sqrt 5)", ks, 0.01, "n=" + std::to_string(s.closure_samples)));
  out.push_back(at_least(4, "4b", "chi-square p Psi_5 Rayleigh flights", chi_square_uniformity(w.psi, 36), 0.01));
  const WalkEndpoints we = sample_walk_endpoints(ScalarDistribution::exponential(kFlightMean), 5, s.closure_samples,
                                                 root.split(2));
  out.push_back(at_least(4, "4b", "chi-square p Psi_5 exponential flights", chi_square_uniformity(we.psi, 36), 0.01));
  const double lambda0 = 1e-5;
  const double radius = 2000.0;
  const double t = 50.0;
  const int annuli = 20;
  for (MobilityKind kind : kAllModels) {
    const auto counts = displaced_annulus_counts(paper_model(kind), lambda0, radius, annuli, t,
                                                 s.dispersion_realizations,
                                                 root.split(10 + static_cast<std::uint64_t>(kind)));
    const DispersionSummary d = dispersion(counts);
    double worst = 0.0;
    int beyond = 0;
    for (int i = 0; i < annuli; ++i) {
      worst = std::max(worst, std::abs(d.ratio[static_cast<std::size_t>(i)] - 1.0));
      const double a = radius * i / annuli;
      const double b = radius * (i + 1) / annuli;
      const double expected = lambda0 * std::numbers::pi * (b * b - a * a);
      if (std::abs(d.mean[static_cast<std::size_t>(i)] - expected) > 3.0 * d.std_error[static_cast<std::size_t>(i)]) ++beyond;
    }
    out.push_back(at_most(4, "4c", "max |variance/mean - 1| over 20 annuli " + to_string(kind), worst, 0.1,
                          "realizations=" + std::to_string(s.dispersion_realizations) +
                              " annuli_mean_beyond_3se=" + std::to_string(beyond)));
  }
  return out;
}

std::vector<CheckResult> check_theorem1_ordering(const ValidationScale&, std::uint64_t) {
  std::vector<CheckResult> out;
  const DensityProvider sl(ServiceModel::UDM, paper_model(MobilityKind::SL), 1e-6, 200.0);
  for (MobilityKind kind : {MobilityKind::RS, MobilityKind::RW, MobilityKind::RWP}) {
    const DensityProvider p(ServiceModel::UDM, paper_model(kind), 1e-6, 200.0);
    double worst = std::numeric_limits<double>::infinity();
    double sweep = std::numeric_limits<double>::infinity();
    std::string where, sweep_where;
    for (double u0 : {250.0, 500.0, 1000.0}) {
      for (double t : {10.0, 20.0, 40.0, 80.0, 200.0}) {
        const InterfererDensity ds = sl.at(u0, t);
        const InterfererDensity dm = p.at(u0, t);
        const double radius = u0 + kV * t;
        const double a = intensity_measure(ds, radius);
        const double b = intensity_measure(dm, radius);
        const double margin = (a - b) / b;
        if (margin < worst) {
          worst = margin;
          where = fmt("u0=%g", u0) + fmt(" t=%g", t);
        }
        // Smaller discs, normalized by the homogeneous count lambda0 pi r^2.
        for (int k = 1; k < 20; ++k) {
          const double r = radius * k / 20.0;
          const double m = (intensity_measure(ds, r) - intensity_measure(dm, r)) / (1e-6 * std::numbers::pi * r * r);
          if (m < sweep) {
            sweep = m;
            sweep_where = fmt("u0=%g", u0) + fmt(" t=%g", t) + fmt(" r=%g", r);
          }
        }
      }
    }
    // On b(o', u0 + vt) every model keeps all displaced excluded points, so the measures tie exactly.
    out.push_back(at_least(5, "5", "min relative margin Lambda_SL - Lambda_" + to_string(kind), worst, -1e-3,
                           "at " + where + "; equal by mass conservation at this radius"));
    out.push_back(at_least(5, "5r", "min margin over r < u0+vt, SL vs " + to_string(kind), sweep, -1e-3,
                           "at " + sweep_where));
  }
  return out;
}

std::vector<CheckResult> check_boundary_limits(const ValidationScale&, std::uint64_t) {
  std::vector<CheckResult> out;
  const std::vector<double> times{10.0, 20.0, 40.0, 50.0, 80.0, 200.0};
  // Continuity: the region-2 expression evaluated at each boundary against the neighbouring region's value.
  for (MobilityKind kind : kAllModels) {
    const DensityProvider p(ServiceModel::UDM, paper_model(kind), 1.0, 200.0);
    double worst = 0.0;
    for (double u0 : {250.0, 500.0, 1000.0}) {
      for (double t : times) {
        const InterfererDensity d = p.at(u0, t);
        const double vt = d.vt();
        worst = std::max(worst, std::abs(d.beta(u0 + vt) - 1.0));
        const double inner = vt >= u0 ? d.beta(std::abs(u0 - vt)) : 0.0;
        worst = std::max(worst, std::abs(d.beta(std::abs(u0 - vt)) - inner));
        worst = std::max(worst, std::abs(d.ratio(u0 + vt) - 1.0));
      }
    }
    out.push_back(at_most(6, "6a", "boundary continuity gap / lambda0 " + to_string(kind), worst, 1e-6));
  }
  // Vanishing exclusion zone.
  for (MobilityKind kind : kAllModels) {
    const DensityProvider p(ServiceModel::UDM, paper_model(kind), 1.0, 200.0);
    const double u0 = 1e-3;
    double worst = 0.0;
    for (double t : times) {
      const InterfererDensity d = p.at(u0, t);
      const double top = u0 + d.vt();
      for (int i = 0; i <= 200; ++i) {
        const double ux = 1e-2 * std::pow(top / 1e-2, i / 200.0);
        worst = std::max(worst, std::abs(d.beta(std::min(ux, top)) - 1.0));
      }
    }
    out.push_back(at_most(6, "6b", "|beta - 1| at u0 = 1e-3 m, u_x >= 1e-2 m " + to_string(kind), worst, 1e-3));
  }
  // t -> 0 against the UE-independent profile, away from the moving band |u_x - u0| <= vt.
  for (MobilityKind kind : kAllModels) {
    const DensityProvider p(ServiceModel::UDM, paper_model(kind), 1.0, 1e-6);
    double worst = 0.0;
    for (double u0 : {250.0, 500.0, 1000.0}) {
      const InterfererDensity d = p.at(u0, 1e-6);
      const InterfererDensity uim = uim_density(1.0, u0);
      for (int i = 0; i <= 2000; ++i) {
        const double ux = 2.0 * u0 * i / 2000.0;
        if (std::abs(ux - u0) <= d.vt()) continue;
        worst = std::max(worst, std::abs(d(ux) - uim(ux)));
      }
    }
    out.push_back(at_most(6, "6c", "UDM(t = 1e-6 s) vs UIM / lambda0 " + to_string(kind), worst, 1e-4));
  }
  return out;
}

std::vector<CheckResult> check_rate_cross_validation(const ValidationScale& s, std::uint64_t seed) {
  const std::vector<double> times{0.0, 20.0, 40.0, 80.0};
  ChannelParams ch;
  const RateEvaluator eval(ServiceModel::UDM, paper_model(MobilityKind::SL), 1e-6, ch, 80.0);
  SimConfig sim;
  sim.lambda0 = 1e-6;
  sim.times = times;
  sim.model = paper_model(MobilityKind::SL);
  sim.channel = ch;
  sim.realizations = s.rate_realizations;
  sim.seed = stream(seed, 7)();
  const EmpiricalSummary mc = run_simulation(sim);
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double a = eval.average_rate(times[i]).value;
    const double m = mc.steps[i].rate;
    out.push_back(at_most(7, "7", fmt("relative gap analytic vs MC rate t=%g s", times[i]), std::abs(a - m) / m, 0.05,
                          fmt("analytic=%.5f", a) + fmt(" mc=%.5f", m) + fmt(" se=%.5f", mc.steps[i].rate_std_error) +
                              " handover_violations=" + std::to_string(mc.steps[i].handover_violations)));
  }
  return out;
}

std::vector<CheckResult> check_rate_trends(const ValidationScale&, std::uint64_t) {
  std::vector<CheckResult> out;
  const std::vector<double> times{0.0, 20.0, 40.0, 80.0};
  const std::vector<double> horizons{60.0, 120.0};
  auto rates = [&](MobilityKind kind, ChannelParams ch) {
    const RateEvaluator eval(ServiceModel::UDM, paper_model(kind), 1e-6, ch, 120.0);
    std::vector<RateResult> r;
    for (double t : times) r.push_back(eval.average_rate(t));
    return r;
  };
  // Margins are judged against the combined quadrature error estimate of the two evaluations.
  auto margin = [](const RateResult& hi, const RateResult& lo) { return hi.value - lo.value + hi.error + lo.error; };
  ChannelParams base;
  const auto sl = rates(MobilityKind::SL, base);
  {
    ChannelParams m2 = base;
    m2.m0 = m2.mx = 2;
    const auto r2 = rates(MobilityKind::SL, m2);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < times.size(); ++i) worst = std::min(worst, margin(r2[i], sl[i]));
    out.push_back(at_least(8, "8a", "min R(m=2) - R(m=1), UDM SL", worst, 0.0));
  }
  {
    ChannelParams h200 = base;
    h200.h = 200.0;
    const auto r2 = rates(MobilityKind::SL, h200);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < times.size(); ++i) worst = std::min(worst, margin(sl[i], r2[i]));
    out.push_back(at_least(8, "8b", "min R(h=100) - R(h=200), UDM SL", worst, 0.0));
  }
  const RateEvaluator sl_eval(ServiceModel::UDM, paper_model(MobilityKind::SL), 1e-6, base, 120.0);
  std::vector<RateResult> sl_sr;
  for (double T : horizons) sl_sr.push_back(sl_eval.session_rate(T));
  for (MobilityKind kind : {MobilityKind::RS, MobilityKind::RW, MobilityKind::RWP}) {
    const auto r = rates(kind, base);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < times.size(); ++i) worst = std::min(worst, margin(r[i], sl[i]));
    out.push_back(at_least(8, "8c", "min R_" + to_string(kind) + " - R_SL", worst, 0.0));
    const RateEvaluator eval(ServiceModel::UDM, paper_model(kind), 1e-6, base, 120.0);
    double worst_sr = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < horizons.size(); ++i) {
      worst_sr = std::min(worst_sr, margin(eval.session_rate(horizons[i]), sl_sr[i]));
    }
    out.push_back(at_least(8, "8c", "min SR_" + to_string(kind) + " - SR_SL (T = 60, 120 s)", worst_sr, 0.0));
  }
  return out;
}

std::vector<CheckResult> check_normalization(const ValidationScale&, std::uint64_t) {
  std::vector<CheckResult> out;
  const std::vector<double> times{10.0, 20.0, 40.0, 50.0, 80.0, 100.0, 200.0, 300.0};
  for (MobilityKind kind : kAllModels) {
    const DisplacementModel model(paper_model(kind), {}, {}, 300.0);
    double worst = 0.0;
    for (double t : times) worst = std::max(worst, std::abs(model.at(t)->raw_total_mass() - 1.0));
    out.push_back(at_most(9, "9a", "|atoms + integral - 1| " + to_string(kind), worst, 1e-3));
  }
  for (MobilityKind kind : kAllModels) {
    const DensityProvider p(ServiceModel::UDM, paper_model(kind), 1.0, 300.0);
    double excursion = 0.0;
    for (double u0 : {250.0, 500.0, 1000.0}) {
      for (double t : times) {
        const InterfererDensity d = p.at(u0, t);
        const double top = 1.2 * (u0 + d.vt());
        for (int i = 0; i <= 300; ++i) {
          const double v = d(top * i / 300.0);
          excursion = std::max({excursion, -v, v - 1.0});
        }
      }
    }
    out.push_back(at_most(9, "9b", "density excursion outside [0, lambda0] / lambda0 " + to_string(kind), excursion, 0.0));
  }
  // Derivatives in units of s: s^j g^(j) against central differences of s^(j-1) g^(j-1).
  struct Case {
    std::string name;
    InterfererDensity density;
  };
  const DensityProvider rw(ServiceModel::UDM, paper_model(MobilityKind::RW), 1e-6, 100.0);
  const std::vector<Case> cases{{"UIM", uim_density(1e-6, 500.0)},
                                {"SL", sl_density(1e-6, 500.0, kV, 40.0)},
                                {"RW", rw.at(500.0, 100.0)}};
  double worst = 0.0;
  for (const Case& c : cases) {
    for (int mx : {1, 2}) {
      ChannelParams ch;
      ch.mx = mx;
      const InterferenceField field(c.density, ch);
      for (double s : {1e6, 1e8, 1e10}) {
        const int k_max = 3;
        const double h = 1e-4 * s;
        const auto g0 = field.exponent_derivatives(s, k_max);
        const auto gp = field.exponent_derivatives(s + h, k_max);
        const auto gm = field.exponent_derivatives(s - h, k_max);
        const auto L0 = laplace_from_exponent(g0);
        const auto Lp = laplace_from_exponent(gp);
        const auto Lm = laplace_from_exponent(gm);
        for (int j = 1; j <= k_max; ++j) {
          const std::size_t J = static_cast<std::size_t>(j);
          const double scale = std::pow(s, j);
          const double g_fd = (gp[J - 1] - gm[J - 1]) / (2.0 * h) * scale;
          const double g_an = g0[J] * scale;
          const double L_fd = (Lp[J - 1] - Lm[J - 1]) / (2.0 * h) * scale;
          const double L_an = L0[J] * scale;
          worst = std::max(worst, std::abs(g_fd - g_an) / std::max(1e-6, 1e-4 * std::abs(g_an)));
          worst = std::max(worst, std::abs(L_fd - L_an) / std::max(1e-6, 1e-4 * std::abs(L_an)));
        }
      }
    }
  }
  out.push_back(at_most(9, "9c", "Laplace derivative vs finite difference (error / tolerance)", worst, 1.0,
                        "tolerance max(1e-6, 1e-4 relative) on s^j-scaled derivatives"));
  return out;
}

std::vector<CheckResult> check_kernel_determinism(const ValidationScale&, std::uint64_t seed) {
  long mismatches = 0;
  Rng root = stream(seed, 10);
  {
    SimConfig sim;
    sim.times = {0.0, 40.0};
    sim.realizations = 200;
    sim.seed = root();
    const auto a = run_simulation(sim, Execution::Serial);
    const auto b = run_simulation(sim, Execution::Parallel);
    const auto c = run_simulation(sim, Execution::Parallel);
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
      mismatches += a.steps[k].sir != b.steps[k].sir;
      mismatches += b.steps[k].sir != c.steps[k].sir;
    }
  }
  {
    const MobilityModelSpec spec = paper_model(MobilityKind::RWP);
    const auto a = sample_net_displacement(spec, 100.0, 2000, root.split(1), Execution::Serial);
    const auto b = sample_net_displacement(spec, 100.0, 2000, root.split(1), Execution::Parallel);
    mismatches += a != b;
    OracleOptions o;
    o.realizations = 200;
    o.parallel = false;
    const auto h1 = empirical_density_oracle(spec, 1e-3, 500.0, 50.0, o, root.split(2));
    o.parallel = true;
    const auto h2 = empirical_density_oracle(spec, 1e-3, 500.0, 50.0, o, root.split(2));
    mismatches += h1.ratio != h2.ratio;
  }
  {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::DensityProfile;
    cfg.seed = seed;
    cfg.models = {MobilityKind::RW};
    cfg.times = {50.0};
    cfg.simulation.density_realizations = 200;
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    for (std::size_t i = 0; i < a.tables.size(); ++i) {
      mismatches += a.tables[i].to_csv() != b.tables[i].to_csv();
      mismatches += a.tables[i].metadata_json() != b.tables[i].metadata_json();
    }
  }
  return {at_most(10, "10", "bitwise mismatches serial vs parallel and repeated tables", static_cast<double>(mismatches), 0.0)};
}

std::vector<CheckResult> run_validation(const ValidationScale& s, std::uint64_t seed, const CheckSink& sink) {
  using Fn = std::vector<CheckResult> (*)(const ValidationScale&, std::uint64_t);
  const Fn checks[] = {check_displacement_laws,   check_rayleigh_asymptotics, check_density_profiles,
                       check_exact_closures,      check_theorem1_ordering,    check_boundary_limits,
                       check_rate_cross_validation, check_rate_trends,        check_normalization,
                       check_kernel_determinism};
  std::vector<CheckResult> all;
  for (Fn f : checks) {
    for (CheckResult& r : f(s, seed)) {
      if (sink) sink(r);
      all.push_back(std::move(r));
    }
  }
  return all;
}

}  // namespace dronenet
