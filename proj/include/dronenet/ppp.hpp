// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "dronenet/rng.hpp"

namespace dronenet {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Disc {
  Point center;
  double radius = 0.0;
  bool contains(Point p) const { return distance(p, center) <= radius; }
};

struct PlanarPointSet {
  std::vector<Point> points;
  Disc window;
  double density = 0.0;
};

// Homogeneous PPP of intensity lambda0 restricted to the window.
PlanarPointSet sample_ppp(double lambda0, Disc window, Rng& rng);

// Uniform point in the disc.
Point sample_in_disc(const Disc& window, Rng& rng);

}  // namespace dronenet
