#include "watchroute/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "geometry_internal.hpp"
#include "watchroute/errors.hpp"

namespace watchroute {

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a) { return std::hypot(a.x, a.y); }
double distance(Point a, Point b) { return norm(b - a); }
double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

double segment_point_distance(Point a, Point b, Point p) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(a, p);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(a + t * ab, p);
}

namespace detail {

bool crossing_inside(std::span<const Point> ring, Point p) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = ring[i];
    const Point b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double ring_boundary_distance(std::span<const Point> ring, Point p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, segment_point_distance(ring[i], ring[(i + 1) % n], p));
  }
  return best;
}

double signed_area(std::span<const Point> ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(ring[i], ring[(i + 1) % n]);
  return 0.5 * twice;
}

double segment_distance(Point a, Point b, Point c, Point d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return 0.0;
  }
  return std::min({segment_point_distance(a, b, c), segment_point_distance(a, b, d),
                   segment_point_distance(c, d, a), segment_point_distance(c, d, b)});
}

bool sees_unchecked(const SimplePolygon& polygon, Point p, Point q) {
  const double eps = polygon.eps();
  const Point d = q - p;
  const double len2 = dot(d, d);
  if (len2 <= eps * eps) return true;
  const double len = std::sqrt(len2);
  const double eps_t = eps / len;

  std::vector<double> ts{0.0, 1.0};
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = polygon[i];
    const Point b = polygon.next(i);
    const Point e = b - a;
    const double denom = cross(d, e);
    const double elen = norm(e);
    if (std::abs(denom) > 1e-14 * len * elen) {
      const double t = cross(a - p, e) / denom;
      const double u = cross(a - p, d) / denom;
      if (t > 0.0 && t < 1.0 && u >= -eps / elen && u <= 1.0 + eps / elen) ts.push_back(t);
    }
    if (segment_point_distance(p, q, a) <= eps) {
      ts.push_back(std::clamp(dot(a - p, d) / len2, 0.0, 1.0));
    }
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    if (ts[k + 1] - ts[k] <= eps_t) continue;
    const Point mid = p + (0.5 * (ts[k] + ts[k + 1])) * d;
    if (!polygon.contains(mid)) return false;
  }
  return true;
}

}  // namespace detail

namespace {

std::vector<Point> normalize_ring(std::vector<Point> pts, double eps) {
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size() && pts.size() >= 3; ++i) {
      const std::size_t n = pts.size();
      const Point prev = pts[(i + n - 1) % n];
      const Point cur = pts[i];
      const Point next = pts[(i + 1) % n];
      const bool repeated = distance(prev, cur) <= eps;
      const bool collinear = segment_point_distance(prev, next, cur) <= eps &&
                             dot(cur - prev, next - cur) > 0.0;
      if (repeated || collinear) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return pts;
}

}  // namespace

SimplePolygon::SimplePolygon(std::vector<Point> vertices, double eps) : eps_(eps) {
  for (const Point& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DomainError("polygon vertex has a non-finite coordinate");
    }
  }
  vertices_ = normalize_ring(std::move(vertices), eps);
  if (vertices_.size() < 3) throw DomainError("polygon needs at least 3 distinct vertices");
  double a = detail::signed_area(vertices_);
  if (a < 0) {
    std::reverse(vertices_.begin(), vertices_.end());
    a = -a;
  }
  if (a <= eps) throw DomainError("polygon has zero area");
  area_ = a;

  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a0 = vertices_[i];
    const Point a1 = vertices_[(i + 1) % n];
    // Adjacent edges must not fold back onto each other.
    const Point a2 = vertices_[(i + 2) % n];
    if (segment_point_distance(a1, a2, a0) <= eps || segment_point_distance(a0, a1, a2) <= eps) {
      throw DomainError("polygon boundary folds back at vertex " + std::to_string((i + 1) % n));
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Point b0 = vertices_[j];
      const Point b1 = vertices_[(j + 1) % n];
      if (detail::segment_distance(a0, a1, b0, b1) <= eps) {
        throw DomainError("polygon boundary self-intersects between edges " + std::to_string(i) +
                          " and " + std::to_string(j));
      }
    }
  }
}

double SimplePolygon::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += distance(vertices_[i], next(i));
  return total;
}

bool SimplePolygon::is_reflex(std::size_t i) const {
  return orient(prev(i), vertices_[i], next(i)) < 0.0;
}

bool SimplePolygon::on_boundary(Point p) const {
  return detail::ring_boundary_distance(vertices_, p) <= eps_;
}

bool SimplePolygon::contains(Point p) const {
  return on_boundary(p) || detail::crossing_inside(vertices_, p);
}

bool SimplePolygon::contains_strictly(Point p) const {
  return !on_boundary(p) && detail::crossing_inside(vertices_, p);
}

SimplePolygon::Box SimplePolygon::bounding_box() const {
  Box box{vertices_.front(), vertices_.front()};
  for (const Point& p : vertices_) {
    box.lo.x = std::min(box.lo.x, p.x);
    box.lo.y = std::min(box.lo.y, p.y);
    box.hi.x = std::max(box.hi.x, p.x);
    box.hi.y = std::max(box.hi.y, p.y);
  }
  return box;
}

Curve::Curve(const SimplePolygon& polygon, std::vector<Point> waypoints) {
  for (const Point& p : waypoints) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DomainError("curve waypoint has a non-finite coordinate");
    }
    if (!waypoints_.empty() && distance(waypoints_.back(), p) <= polygon.eps()) continue;
    waypoints_.push_back(p);
  }
  if (waypoints_.empty()) throw DomainError("curve needs at least one waypoint");
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    if (!polygon.contains(waypoints_[i])) {
      throw DomainError("curve waypoint " + std::to_string(i) + " lies outside the polygon");
    }
  }
  cumulative_.push_back(0.0);
  for (std::size_t i = 0; i + 1 < waypoints_.size(); ++i) {
    if (!detail::sees_unchecked(polygon, waypoints_[i], waypoints_[i + 1])) {
      throw DomainError("curve segment " + std::to_string(i) + " leaves the polygon");
    }
    cumulative_.push_back(cumulative_.back() + distance(waypoints_[i], waypoints_[i + 1]));
  }
}

Point Curve::at(double s) const {
  if (waypoints_.size() == 1 || s <= 0.0) return waypoints_.front();
  if (s >= length()) return waypoints_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  const double seg = cumulative_[k + 1] - cumulative_[k];
  const double t = (s - cumulative_[k]) / seg;
  return waypoints_[k] + t * (waypoints_[k + 1] - waypoints_[k]);
}

double Curve::project(Point p) const {
  if (waypoints_.size() == 1) return 0.0;
  double best_d = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t k = 0; k + 1 < waypoints_.size(); ++k) {
    const Point a = waypoints_[k];
    const Point ab = waypoints_[k + 1] - a;
    const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    const double d = distance(a + t * ab, p);
    if (d < best_d) {
      best_d = d;
      best_s = cumulative_[k] + t * (cumulative_[k + 1] - cumulative_[k]);
    }
  }
  return best_s;
}

CurveInterval CurveVisibility::hull() const {
  CurveInterval h = pieces.front();
  for (const CurveInterval& p : pieces) {
    h.s_left = std::min(h.s_left, p.s_left);
    h.s_right = std::max(h.s_right, p.s_right);
  }
  return h;
}

bool VisibilityRegion::contains(Point q, double eps) const {
  if (boundary.size() < 3) {
    for (std::size_t i = 0; i + 1 < boundary.size(); ++i) {
      if (segment_point_distance(boundary[i], boundary[i + 1], q) <= eps) return true;
    }
    return !boundary.empty() && distance(boundary.front(), q) <= eps;
  }
  return detail::ring_boundary_distance(boundary, q) <= eps ||
         detail::crossing_inside(boundary, q);
}

double VisibilityRegion::area() const {
  if (boundary.size() < 3) return 0.0;
  return std::abs(detail::signed_area(boundary));
}

std::vector<std::size_t> ChainVisibilityReport::violated() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].visibility.kind == CurveVisibility::Kind::kViolated) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> ChainVisibilityReport::empty() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].visibility.kind == CurveVisibility::Kind::kEmpty) out.push_back(i);
  }
  return out;
}

bool sees(const SimplePolygon& polygon, Point p, Point q) {
  if (!polygon.contains(p) || !polygon.contains(q)) {
    throw DomainError("sees: point outside the polygon");
  }
  return detail::sees_unchecked(polygon, p, q);
}

ChainVisibilityReport check_chain_visibility(const SimplePolygon& polygon, const Curve& curve,
                                             std::span<const Point> targets) {
  ChainVisibilityReport report;
  report.pass = true;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    ChainVisibilityReport::Entry entry;
    entry.visibility = curve_interval(polygon, curve, targets[i], i);
    entry.on_boundary = polygon.on_boundary(targets[i]);
    if (entry.visibility.kind != CurveVisibility::Kind::kConnected) report.pass = false;
    report.targets.push_back(std::move(entry));
  }
  return report;
}

std::vector<Point> sample_interior(const SimplePolygon& polygon, std::size_t count,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto box = polygon.bounding_box();
  std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x);
  std::uniform_real_distribution<double> uy(box.lo.y, box.hi.y);
  std::vector<Point> out;
  out.reserve(count);
  while (out.size() < count) {
    const Point p{ux(rng), uy(rng)};
    if (polygon.contains(p)) out.push_back(p);
  }
  return out;
}

namespace {

void check_viewpoints(const SimplePolygon& polygon, std::span<const Point> viewpoints) {
  for (std::size_t i = 0; i < viewpoints.size(); ++i) {
    if (!polygon.contains(viewpoints[i])) {
      throw DomainError("viewpoint " + std::to_string(i) + " lies outside the polygon");
    }
  }
}

bool seen_by_any(const SimplePolygon& polygon, std::span<const Point> viewpoints, Point q) {
  for (const Point& v : viewpoints) {
    if (detail::sees_unchecked(polygon, v, q)) return true;
  }
  return false;
}

}  // namespace

double coverage_fraction(const SimplePolygon& polygon, std::span<const Point> viewpoints,
                         std::size_t sample_count, std::uint64_t seed) {
  if (sample_count == 0) throw DomainError("coverage_fraction: sample_count must be positive");
  if (viewpoints.empty()) return 0.0;
  check_viewpoints(polygon, viewpoints);
  const std::vector<Point> samples = sample_interior(polygon, sample_count, seed);
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  std::size_t covered = 0;
#pragma omp parallel for reduction(+ : covered) schedule(dynamic, 512)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (seen_by_any(polygon, viewpoints, samples[static_cast<std::size_t>(i)])) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(sample_count);
}

double coverage_fraction_serial(const SimplePolygon& polygon, std::span<const Point> viewpoints,
                                std::size_t sample_count, std::uint64_t seed) {
  if (sample_count == 0) throw DomainError("coverage_fraction: sample_count must be positive");
  if (viewpoints.empty()) return 0.0;
  check_viewpoints(polygon, viewpoints);
  std::size_t covered = 0;
  for (const Point& q : sample_interior(polygon, sample_count, seed)) {
    if (seen_by_any(polygon, viewpoints, q)) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(sample_count);
}

}  // namespace watchroute
