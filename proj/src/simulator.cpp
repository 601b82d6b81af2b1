// SPDX-License-Identifier: Apache-2.0
#include "dronenet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "dronenet/error.hpp"
#include "dronenet/statistics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dronenet {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
void for_each_index(long n, Execution exec, const F& body) {
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) body(i);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
}

double gamma_fade(int m, Rng& rng) { return m == 1 ? rng.exponential() : sample_gamma_fading(m, rng); }

}  // namespace

int configured_threads() {
  const char* env = std::getenv("DRONENET_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError("DRONENET_THREADS must be a positive integer");
  return static_cast<int>(n);
}

void apply_thread_override() {
#ifdef _OPENMP
  const int n = configured_threads();
  if (n > 0) omp_set_num_threads(n);
#else
  (void)configured_threads();
#endif
}

double SimConfig::horizon() const {
  double h = 0.0;
  for (double t : times) h = std::max(h, t);
  return h;
}

double SimConfig::effective_window() const {
  return window_radius > 0.0 ? window_radius : observation_radius + model.v * horizon();
}

void SimConfig::validate() const {
  model.validate();
  channel.validate();
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) throw ConfigError("lambda0 must be positive");
  if (!(observation_radius > 0.0)) throw ConfigError("observation_radius must be positive");
  if (times.empty()) throw ConfigError("time grid is empty");
  for (double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("times must be non-negative");
  }
  if (realizations < 1) throw ConfigError("realizations must be at least 1");
  if (effective_window() < observation_radius + model.v * horizon() * (1.0 - 1e-12)) {
    throw ConfigError("window radius " + std::to_string(effective_window()) +
                      " is smaller than observation radius + v * horizon");
  }
}

NetworkRealization realize_network(const SimConfig& cfg, Rng& rng) {
  NetworkRealization net;
  const double horizon = cfg.horizon();
  const PlanarPointSet pts = sample_ppp(cfg.lambda0, Disc{{0.0, 0.0}, cfg.effective_window()}, rng);
  if (pts.points.empty()) {
    net.empty = true;
    net.positions.assign(cfg.times.size(), {});
    return net;
  }
  std::size_t serving = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.points.size(); ++i) {
    const double d = norm(pts.points[i]);
    if (d < best) {
      best = d;
      serving = i;
    }
  }
  net.serving_start = pts.points[serving];
  net.u0 = std::max(best, 1e-9);
  auto path_for = [&](Point p) {
    if (horizon > 0.0) return build_trajectory(cfg.model, p, horizon, rng);
    return Trajectory(p, cfg.model.v, 0.0, {Segment{0.0, 0.0, 0.0}});
  };
  net.interferers.reserve(pts.points.size() - 1);
  for (std::size_t i = 0; i < pts.points.size(); ++i) {
    if (i == serving) continue;
    net.interferers.push_back(Drone{pts.points[i], path_for(pts.points[i])});
  }
  if (cfg.service == ServiceModel::UIM) net.serving_path.push_back(path_for(net.serving_start));
  net.positions.resize(cfg.times.size());
  for (std::size_t k = 0; k < cfg.times.size(); ++k) {
    const double t = cfg.times[k];
    auto& row = net.positions[k];
    row.reserve(net.interferers.size());
    for (const Drone& d : net.interferers) row.push_back(horizon > 0.0 ? d.path.position_at(t) : d.start);
  }
  return net;
}

EmpiricalSummary run_simulation(const SimConfig& cfg, Execution exec) {
  cfg.validate();
  const std::size_t nt = cfg.times.size();
  const long R = cfg.realizations;
  const ChannelParams& ch = cfg.channel;
  const double R_obs = cfg.observation_radius;
  const double h2 = ch.h * ch.h;
  const double tail = cfg.tail_correction
                          ? 2.0 * kPi * cfg.lambda0 * std::pow(R_obs * R_obs + h2, 1.0 - 0.5 * ch.alpha) / (ch.alpha - 2.0)
                          : 0.0;

  std::vector<double> sir(static_cast<std::size_t>(R) * nt, 0.0);
  std::vector<char> used(static_cast<std::size_t>(R) * nt, 0);
  std::vector<char> violation(static_cast<std::size_t>(R) * nt, 0);
  std::vector<double> u0s(static_cast<std::size_t>(R), 0.0);
  const Rng root(cfg.seed);

  for_each_index(R, exec, [&](long r) {
    Rng rng = root.split(static_cast<std::uint64_t>(r));
    const NetworkRealization net = realize_network(cfg, rng);
    u0s[static_cast<std::size_t>(r)] = net.u0;
    if (net.empty) return;
    const ServingPathUDM udm{net.u0, cfg.model.v};
    for (std::size_t k = 0; k < nt; ++k) {
      const double t = cfg.times[k];
      const std::vector<Point>& pos = net.positions[k];
      double d0 = 0.0;
      std::size_t serving_slot = pos.size();  // UIM: index into pos of a re-associated serving drone
      Point uim_serving{};
      if (cfg.service == ServiceModel::UDM) {
        d0 = udm.distance_at(t);
        double nearest = std::numeric_limits<double>::infinity();
        for (const Point& p : pos) nearest = std::min(nearest, norm(p));
        if (nearest < d0 - 1e-9 * std::max(1.0, net.u0)) violation[static_cast<std::size_t>(r) * nt + k] = 1;
      } else {
        uim_serving = cfg.horizon() > 0.0 ? net.serving_path.front().position_at(t) : net.serving_start;
        d0 = norm(uim_serving);
        for (std::size_t i = 0; i < pos.size(); ++i) {
          const double d = norm(pos[i]);
          if (d < d0) {
            d0 = d;
            serving_slot = i;
          }
        }
      }
      const double h0 = gamma_fade(ch.m0, rng);
      double interference = 0.0;
      long count = 0;
      auto add = [&](const Point& p) {
        const double u2 = p.x * p.x + p.y * p.y;
        if (u2 >= R_obs * R_obs) return;
        interference += ch.power * gamma_fade(ch.mx, rng) * std::pow(u2 + h2, -0.5 * ch.alpha);
        ++count;
      };
      for (std::size_t i = 0; i < pos.size(); ++i) {
        if (i != serving_slot) add(pos[i]);
      }
      if (serving_slot != pos.size()) add(uim_serving);
      if (count == 0) continue;
      interference += ch.power * tail;
      const double signal = ch.power * h0 * std::pow(d0 * d0 + h2, -0.5 * ch.alpha);
      sir[static_cast<std::size_t>(r) * nt + k] = signal / interference;
      used[static_cast<std::size_t>(r) * nt + k] = 1;
    }
  });

  EmpiricalSummary out;
  out.tail_mean = tail;
  out.window_radius = cfg.effective_window();
  out.serving_distance0 = std::move(u0s);
  for (std::size_t k = 0; k < nt; ++k) {
    TimeStepSummary s;
    s.t = cfg.times[k];
    std::vector<double> logs;
    for (long r = 0; r < R; ++r) {
      const std::size_t idx = static_cast<std::size_t>(r) * nt + k;
      if (violation[idx]) ++s.handover_violations;
      if (!used[idx]) {
        ++s.excluded;
        continue;
      }
      s.sir.push_back(sir[idx]);
      logs.push_back(std::log1p(sir[idx]));
    }
    const MeanEstimate m = mean_estimate(logs);
    s.used = m.count;
    s.rate = m.mean;
    s.rate_std_error = m.std_error;
    out.steps.push_back(std::move(s));
  }
  return out;
}

std::vector<double> sample_net_displacement(const MobilityModelSpec& model, double t, long count, const Rng& rng,
                                            Execution exec) {
  model.validate();
  if (!(t >= 0.0)) throw ParameterError("t must be non-negative");
  if (count < 1) throw ParameterError("count must be positive");
  std::vector<double> out(static_cast<std::size_t>(count), 0.0);
  if (t == 0.0) return out;
  for_each_index(count, exec, [&](long i) {
    Rng r = rng.split(static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = build_trajectory(model, Point{0.0, 0.0}, t, r).net_displacement(t);
  });
  return out;
}

WalkEndpoints sample_walk_endpoints(const ScalarDistribution& flight, int n, long count, const Rng& rng,
                                    Execution exec) {
  if (n < 1 || count < 1) throw ParameterError("n and count must be positive");
  const MobilityModelSpec model = MobilityModelSpec::rw(1.0, flight);
  WalkEndpoints out;
  out.z.assign(static_cast<std::size_t>(count), 0.0);
  out.psi.assign(static_cast<std::size_t>(count), 0.0);
  for_each_index(count, exec, [&](long i) {
    Rng r = rng.split(static_cast<std::uint64_t>(i));
    double horizon = 2.0 * n * flight.mean();
    Trajectory path = build_trajectory(model, Point{0.0, 0.0}, horizon, r);
    while (path.segments().size() < static_cast<std::size_t>(n)) {
      horizon *= 2.0;
      path = build_trajectory(model, Point{0.0, 0.0}, horizon, r);
    }
    double x = 0.0;
    double y = 0.0;
    for (int k = 0; k < n; ++k) {
      const Segment& s = path.segments()[static_cast<std::size_t>(k)];
      x += s.length * std::cos(s.theta);
      y += s.length * std::sin(s.theta);
    }
    double psi = std::atan2(y, x);
    if (psi < 0.0) psi += 2.0 * kPi;
    out.z[static_cast<std::size_t>(i)] = std::hypot(x, y);
    out.psi[static_cast<std::size_t>(i)] = psi;
  });
  return out;
}

std::vector<std::vector<long>> displaced_annulus_counts(const MobilityModelSpec& model, double lambda0,
                                                        double radius, int annuli, double t, long realizations,
                                                        const Rng& rng, Execution exec) {
  model.validate();
  if (!(lambda0 > 0.0) || !(radius > 0.0) || annuli < 1 || realizations < 2 || !(t >= 0.0)) {
    throw ParameterError("invalid annulus-count request");
  }
  const Disc window{{0.0, 0.0}, radius + model.v * t};
  const double width = radius / annuli;
  std::vector<std::vector<long>> counts(static_cast<std::size_t>(realizations),
                                        std::vector<long>(static_cast<std::size_t>(annuli), 0));
  for_each_index(realizations, exec, [&](long r) {
    Rng rr = rng.split(static_cast<std::uint64_t>(r));
    const PlanarPointSet pts = sample_ppp(lambda0, window, rr);
    auto& row = counts[static_cast<std::size_t>(r)];
    for (const Point& p : pts.points) {
      const Point q = t > 0.0 ? build_trajectory(model, p, t, rr).position_at(t) : p;
      const double d = norm(q);
      if (d >= radius) continue;
      ++row[static_cast<std::size_t>(std::min(annuli - 1, static_cast<int>(d / width)))];
    }
  });
  return counts;
}

}  // namespace dronenet
