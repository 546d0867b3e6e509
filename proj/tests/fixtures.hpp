#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "watchroute/geometry.hpp"

namespace fixtures {

using watchroute::Point;

inline std::vector<Point> unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

inline std::vector<Point> l_polygon() { return {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}; }

inline std::vector<Point> u_polygon() {
  return {{0, 0}, {3, 0}, {3, 2}, {2, 2}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
}

inline std::vector<Point> u_curve() { return {{0.5, 0.5}, {2.5, 0.5}}; }

inline std::vector<Point> u_towers() { return {{0.5, 1.9}, {2.5, 1.9}}; }

/// Distance from `p` along unit `u` to the farthest boundary crossing of
/// the ring; for a region star-shaped about p this is where the ray leaves.
inline double ray_extent(const std::vector<Point>& ring, Point p, Point u) {
  double best = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point a = ring[i];
    const Point b = ring[(i + 1) % ring.size()];
    const Point e = b - a;
    const double den = watchroute::cross(u, e);
    if (std::abs(den) < 1e-15) continue;
    const double t = watchroute::cross(a - p, e) / den;
    const double s = watchroute::cross(a - p, u) / den;
    if (t >= 0 && s >= -1e-12 && s <= 1 + 1e-12) best = std::max(best, t);
  }
  return best;
}

}  // namespace fixtures
