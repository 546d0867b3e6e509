#pragma once

#include <span>

#include "watchroute/geometry.hpp"

namespace watchroute::detail {

bool crossing_inside(std::span<const Point> ring, Point p);
double ring_boundary_distance(std::span<const Point> ring, Point p);
double signed_area(std::span<const Point> ring);
double segment_distance(Point a, Point b, Point c, Point d);
/// sees() without the containment precondition check.
bool sees_unchecked(const SimplePolygon& polygon, Point p, Point q);

}  // namespace watchroute::detail
