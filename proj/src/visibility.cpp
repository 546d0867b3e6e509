#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "geometry_internal.hpp"
#include "watchroute/errors.hpp"
#include "watchroute/geometry.hpp"

namespace watchroute {

namespace {

struct Direction {
  double angle;
  Point dir;  // unit vector; exact vertex direction for vertex angles
};

Point unit(Point v) { return (1.0 / norm(v)) * v; }

/// Edge index hit first by the ray p + t*u, t > eps, provided the ray
/// actually enters the polygon interior before that hit.
std::optional<std::size_t> first_exit(const SimplePolygon& polygon, Point p, Point u) {
  const double eps = polygon.eps();
  double best_t = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point a = polygon[i];
    const Point e = polygon.next(i) - a;
    const double denom = cross(u, e);
    if (std::abs(denom) < 1e-15 * norm(e)) continue;
    const double t = cross(a - p, e) / denom;
    const double s = cross(a - p, u) / denom;
    if (s < -1e-12 || s > 1.0 + 1e-12 || t <= eps) continue;
    if (t < best_t) {
      best_t = t;
      best = i;
    }
  }
  if (!best) return std::nullopt;
  if (!polygon.contains(p + (0.5 * best_t) * u)) return std::nullopt;
  return best;
}

Point ray_line_point(const SimplePolygon& polygon, Point p, const Direction& d, std::size_t edge) {
  const Point a = polygon[edge];
  const Point b = polygon.next(edge);
  const Point e = b - a;
  const double denom = cross(d.dir, e);
  if (std::abs(denom) > 1e-12 * norm(e)) {
    const double t = cross(a - p, e) / denom;
    if (t >= 0.0) return p + t * d.dir;
  }
  // Ray nearly parallel to the edge: the boundary point at this angle is
  // the edge endpoint angularly closest to the ray.
  const double ca = dot(unit(a - p), d.dir);
  const double cb = dot(unit(b - p), d.dir);
  return ca >= cb ? a : b;
}

void push_distinct(std::vector<Point>& out, Point q, double eps) {
  if (out.empty() || distance(out.back(), q) > eps) out.push_back(q);
}

}  // namespace

VisibilityRegion visibility_polygon(const SimplePolygon& polygon, Point p) {
  if (!polygon.contains(p)) throw DomainError("visibility_polygon: point outside the polygon");
  const double eps = polygon.eps();

  std::vector<Direction> dirs;
  for (const Point& v : polygon.vertices()) {
    if (distance(v, p) <= eps) continue;
    const Point d = v - p;
    dirs.push_back({std::atan2(d.y, d.x), unit(d)});
  }
  std::sort(dirs.begin(), dirs.end(),
            [](const Direction& a, const Direction& b) { return a.angle < b.angle; });
  std::vector<Direction> uniq;
  for (const Direction& d : dirs) {
    if (uniq.empty() || d.angle - uniq.back().angle > 1e-12) uniq.push_back(d);
  }
  if (uniq.size() > 1 && uniq.back().angle - uniq.front().angle > 2 * std::numbers::pi - 1e-12) {
    uniq.pop_back();
  }

  VisibilityRegion region{p, {}};
  const std::size_t k = uniq.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Direction& lo = uniq[i];
    Direction hi = uniq[(i + 1) % k];
    if (i + 1 == k) hi.angle += 2 * std::numbers::pi;
    const double mid = 0.5 * (lo.angle + hi.angle);
    const Point u{std::cos(mid), std::sin(mid)};
    const auto edge = first_exit(polygon, p, u);
    if (!edge) {
      push_distinct(region.boundary, p, eps);
      continue;
    }
    push_distinct(region.boundary, ray_line_point(polygon, p, lo, *edge), eps);
    push_distinct(region.boundary, ray_line_point(polygon, p, hi, *edge), eps);
  }
  while (region.boundary.size() > 1 &&
         distance(region.boundary.front(), region.boundary.back()) <= eps) {
    region.boundary.pop_back();
  }
  return region;
}

namespace {

struct ArcPiece {
  double lo, hi;
};

void merge_pieces(std::vector<ArcPiece>& pieces, double gap) {
  std::sort(pieces.begin(), pieces.end(),
            [](const ArcPiece& a, const ArcPiece& b) { return a.lo < b.lo; });
  std::vector<ArcPiece> merged;
  for (const ArcPiece& p : pieces) {
    if (!merged.empty() && p.lo <= merged.back().hi + gap) {
      merged.back().hi = std::max(merged.back().hi, p.hi);
    } else {
      merged.push_back(p);
    }
  }
  pieces = std::move(merged);
}

}  // namespace

CurveVisibility curve_interval(const SimplePolygon& polygon, const Curve& curve, Point x,
                               std::size_t target_id) {
  const VisibilityRegion vp = visibility_polygon(polygon, x);
  const double eps = polygon.eps();
  const auto& w = curve.waypoints();
  const auto& cum = curve.cumulative_arclen();
  std::vector<ArcPiece> pieces;

  if (w.size() == 1) {
    if (vp.contains(w.front(), eps)) pieces.push_back({0.0, 0.0});
  }
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const Point a = w[k];
    const Point d = w[k + 1] - a;
    const double len2 = dot(d, d);
    const double seg_len = cum[k + 1] - cum[k];
    std::vector<double> ts{0.0, 1.0};
    const std::size_t m = vp.boundary.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Point c = vp.boundary[i];
      const Point e = vp.boundary[(i + 1) % m] - c;
      const double elen = norm(e);
      const double denom = cross(d, e);
      if (elen > 0.0 && std::abs(denom) > 1e-14 * std::sqrt(len2) * elen) {
        const double t = cross(c - a, e) / denom;
        const double u = cross(c - a, d) / denom;
        if (t > 0.0 && t < 1.0 && u >= -eps / elen && u <= 1.0 + eps / elen) ts.push_back(t);
      }
      if (segment_point_distance(a, w[k + 1], c) <= eps) {
        ts.push_back(std::clamp(dot(c - a, d) / len2, 0.0, 1.0));
      }
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double t0 = ts[i];
      if (vp.contains(a + t0 * d, eps)) {
        pieces.push_back({cum[k] + t0 * seg_len, cum[k] + t0 * seg_len});
      }
      if (i + 1 < ts.size() && (ts[i + 1] - t0) * seg_len > eps) {
        const double t1 = ts[i + 1];
        if (vp.contains(a + (0.5 * (t0 + t1)) * d, eps)) {
          pieces.push_back({cum[k] + t0 * seg_len, cum[k] + t1 * seg_len});
        }
      }
    }
  }
  merge_pieces(pieces, eps);

  CurveVisibility out;
  for (const ArcPiece& p : pieces) {
    out.pieces.push_back({target_id, std::clamp(p.lo, 0.0, curve.length()),
                          std::clamp(p.hi, 0.0, curve.length())});
  }
  if (out.pieces.empty()) {
    out.kind = CurveVisibility::Kind::kEmpty;
  } else if (out.pieces.size() == 1) {
    out.kind = CurveVisibility::Kind::kConnected;
  } else {
    out.kind = CurveVisibility::Kind::kViolated;
  }
  return out;
}

}  // namespace watchroute
