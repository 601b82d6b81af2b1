// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dronenet/distributions.hpp"
#include "dronenet/ppp.hpp"
#include "dronenet/rng.hpp"

namespace dronenet {

enum class MobilityKind { SL, RS, RW, RWP };

std::string to_string(MobilityKind kind);
MobilityKind mobility_kind_from_string(const std::string& name);

struct MobilityModelSpec {
  MobilityKind kind = MobilityKind::SL;
  double v = 0.0;
  std::optional<ScalarDistribution> flight;
  std::optional<ScalarDistribution> hover;

  static MobilityModelSpec sl(double v);
  static MobilityModelSpec rs(double v, ScalarDistribution flight);
  static MobilityModelSpec rw(double v, ScalarDistribution flight);
  static MobilityModelSpec rwp(double v, ScalarDistribution flight, ScalarDistribution hover);

  void validate() const;
  std::string describe() const;
};

struct Segment {
  double theta = 0.0;      // heading, radians
  double length = 0.0;     // flight length, meters (infinite for SL)
  double pre_hover = 0.0;  // hover before the flight, seconds
};

// Piecewise-linear path with optional hovers before each flight.
class Trajectory {
 public:
  Trajectory(Point origin, double v, double horizon, std::vector<Segment> segments);

  Point position_at(double t) const;
  double net_displacement(double t) const;

  const Point& origin() const { return origin_; }
  const std::vector<Segment>& segments() const { return segments_; }
  double speed() const { return v_; }
  double horizon() const { return horizon_; }
  // Path length flown by time t.
  double path_length(double t) const;

 private:
  Point origin_;
  double v_;
  double horizon_;
  std::vector<Segment> segments_;
  std::vector<double> hover_start_;   // time the pre-hover of segment i begins
  std::vector<double> flight_start_;  // time the flight of segment i begins
  std::vector<Point> start_point_;    // position at the start of segment i
  std::vector<double> path_before_;   // path length flown before segment i

  std::size_t locate(double t) const;
};

Trajectory build_trajectory(const MobilityModelSpec& model, Point origin, double horizon, Rng& rng);

// Serving drone under the UE-dependent model: flies straight to the zenith point, then hovers.
struct ServingPathUDM {
  double u0 = 0.0;
  double v = 0.0;
  double distance_at(double t) const { return u0 - v * t > 0.0 ? u0 - v * t : 0.0; }
  // Position for a drone starting at `start` heading to `target`.
  Point position_at(Point start, Point target, double t) const;
};

}  // namespace dronenet
