// SPDX-License-Identifier: Apache-2.0
#include "dronenet/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dronenet/error.hpp"

namespace dronenet {

std::string to_string(MobilityKind kind) {
  switch (kind) {
    case MobilityKind::SL: return "SL";
    case MobilityKind::RS: return "RS";
    case MobilityKind::RW: return "RW";
    case MobilityKind::RWP: return "RWP";
  }
  return "?";
}

MobilityKind mobility_kind_from_string(const std::string& name) {
  if (name == "SL") return MobilityKind::SL;
  if (name == "RS") return MobilityKind::RS;
  if (name == "RW") return MobilityKind::RW;
  if (name == "RWP") return MobilityKind::RWP;
  throw ParameterError("unknown mobility model '" + name + "'");
}

MobilityModelSpec MobilityModelSpec::sl(double v) {
  MobilityModelSpec m{MobilityKind::SL, v, std::nullopt, std::nullopt};
  m.validate();
  return m;
}

MobilityModelSpec MobilityModelSpec::rs(double v, ScalarDistribution flight) {
  MobilityModelSpec m{MobilityKind::RS, v, flight, std::nullopt};
  m.validate();
  return m;
}

MobilityModelSpec MobilityModelSpec::rw(double v, ScalarDistribution flight) {
  MobilityModelSpec m{MobilityKind::RW, v, flight, std::nullopt};
  m.validate();
  return m;
}

MobilityModelSpec MobilityModelSpec::rwp(double v, ScalarDistribution flight, ScalarDistribution hover) {
  MobilityModelSpec m{MobilityKind::RWP, v, flight, hover};
  m.validate();
  return m;
}

void MobilityModelSpec::validate() const {
  if (!(std::isfinite(v) && v > 0.0)) throw ParameterError("speed v must be finite and positive");
  if (kind != MobilityKind::SL && !flight) throw ParameterError(to_string(kind) + " needs a flight law");
  if (kind == MobilityKind::RWP && !hover) throw ParameterError("RWP needs a hover law");
  if (flight && !(flight->support_lo() > 0.0 || flight->has_density())) {
    throw ParameterError("flight lengths must be strictly positive");
  }
}

std::string MobilityModelSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind) << "(v=" << v;
  if (flight) os << ",flight=" << flight->describe();
  if (hover) os << ",hover=" << hover->describe();
  os << ")";
  return os.str();
}

Trajectory::Trajectory(Point origin, double v, double horizon, std::vector<Segment> segments)
    : origin_(origin), v_(v), horizon_(horizon), segments_(std::move(segments)) {
  if (!(v_ > 0.0)) throw ParameterError("trajectory speed must be positive");
  if (!(horizon_ >= 0.0)) throw ParameterError("trajectory horizon must be non-negative");
  const std::size_t n = segments_.size();
  hover_start_.resize(n);
  flight_start_.resize(n);
  start_point_.resize(n);
  path_before_.resize(n);
  double time = 0.0;
  double path = 0.0;
  Point p = origin_;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& s = segments_[i];
    hover_start_[i] = time;
    flight_start_[i] = time + s.pre_hover;
    start_point_[i] = p;
    path_before_[i] = path;
    time = flight_start_[i] + s.length / v_;
    path += s.length;
    if (std::isfinite(s.length)) {
      p = {p.x + s.length * std::cos(s.theta), p.y + s.length * std::sin(s.theta)};
    }
  }
}

std::size_t Trajectory::locate(double t) const {
  // Last segment whose hover starts at or before t.
  auto it = std::upper_bound(hover_start_.begin(), hover_start_.end(), t);
  return static_cast<std::size_t>(std::distance(hover_start_.begin(), it)) - 1;
}

Point Trajectory::position_at(double t) const {
  if (!(t >= 0.0 && t <= horizon_)) throw RangeError("time outside [0, horizon]");
  if (segments_.empty()) return origin_;
  const std::size_t i = locate(t);
  const Segment& s = segments_[i];
  const double flown = std::clamp(v_ * (t - flight_start_[i]), 0.0, s.length);
  return {start_point_[i].x + flown * std::cos(s.theta), start_point_[i].y + flown * std::sin(s.theta)};
}

double Trajectory::net_displacement(double t) const {
  if (!(t >= 0.0 && t <= horizon_)) throw RangeError("time outside [0, horizon]");
  if (segments_.empty()) return 0.0;
  const std::size_t i = locate(t);
  // Along the first flight the distance is the path length itself.
  if (i == 0) return std::clamp(v_ * (t - flight_start_[0]), 0.0, segments_[0].length);
  return distance(position_at(t), origin_);
}

double Trajectory::path_length(double t) const {
  if (!(t >= 0.0 && t <= horizon_)) throw RangeError("time outside [0, horizon]");
  if (segments_.empty()) return 0.0;
  const std::size_t i = locate(t);
  return path_before_[i] + std::clamp(v_ * (t - flight_start_[i]), 0.0, segments_[i].length);
}

Trajectory build_trajectory(const MobilityModelSpec& model, Point origin, double horizon, Rng& rng) {
  if (!(horizon > 0.0)) throw ParameterError("trajectory horizon must be positive");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Segment> segs;
  switch (model.kind) {
    case MobilityKind::SL:
      segs.push_back({two_pi * rng.uniform(), std::numeric_limits<double>::infinity(), 0.0});
      break;
    case MobilityKind::RS: {
      const double th = two_pi * rng.uniform();
      segs.push_back({th, model.flight->sample(rng), 0.0});
      break;
    }
    case MobilityKind::RW: {
      double time = 0.0;
      while (time < horizon) {
        const double th = two_pi * rng.uniform();
        const double r = model.flight->sample(rng);
        segs.push_back({th, r, 0.0});
        time += r / model.v;
      }
      break;
    }
    case MobilityKind::RWP: {
      double time = 0.0;
      while (time < horizon) {
        const double hover = model.hover->sample(rng);
        const double th = two_pi * rng.uniform();
        const double r = model.flight->sample(rng);
        segs.push_back({th, r, hover});
        time += hover + r / model.v;
      }
      break;
    }
  }
  return Trajectory(origin, model.v, horizon, std::move(segs));
}

Point ServingPathUDM::position_at(Point start, Point target, double t) const {
  const double d = distance(start, target);
  if (d <= 0.0) return target;
  const double remaining = std::max(d - v * t, 0.0);
  const double f = remaining / d;
  return {target.x + f * (start.x - target.x), target.y + f * (start.y - target.y)};
}

}  // namespace dronenet
