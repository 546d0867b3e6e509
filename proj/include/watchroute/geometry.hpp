#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace watchroute {

/// Absolute tolerance, in world units, used by every orientation and
/// point-on-segment predicate.
inline constexpr double kDefaultEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

double dot(Point a, Point b);
double cross(Point a, Point b);
double norm(Point a);
double distance(Point a, Point b);
/// Twice the signed area of triangle abc; positive when counter-clockwise.
double orient(Point a, Point b, Point c);
double segment_point_distance(Point a, Point b, Point p);

/// Hole-free simple polygon stored counter-clockwise. Construction
/// normalizes the input (drops repeated and collinear vertices, fixes the
/// orientation) and rejects self-intersecting boundaries.
class SimplePolygon {
 public:
  explicit SimplePolygon(std::vector<Point> vertices, double eps = kDefaultEps);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  const Point& next(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }
  const Point& prev(std::size_t i) const {
    return vertices_[(i + vertices_.size() - 1) % vertices_.size()];
  }
  double eps() const noexcept { return eps_; }
  double area() const noexcept { return area_; }
  double perimeter() const;
  /// Interior angle greater than pi.
  bool is_reflex(std::size_t i) const;

  bool on_boundary(Point p) const;
  /// Point in the closed polygon.
  bool contains(Point p) const;
  /// Point strictly inside, farther than eps from the boundary.
  bool contains_strictly(Point p) const;

  struct Box {
    Point lo, hi;
  };
  Box bounding_box() const;

 private:
  std::vector<Point> vertices_;
  double eps_;
  double area_ = 0.0;
};

/// Polyline inside a polygon, parameterized by arc length.
class Curve {
 public:
  /// Validates every waypoint and segment against `polygon`.
  Curve(const SimplePolygon& polygon, std::vector<Point> waypoints);

  const std::vector<Point>& waypoints() const noexcept { return waypoints_; }
  const std::vector<double>& cumulative_arclen() const noexcept { return cumulative_; }
  double length() const noexcept { return cumulative_.back(); }
  std::size_t segment_count() const noexcept { return waypoints_.size() - 1; }
  Point at(double s) const;
  /// Arc length of the curve point nearest to `p`.
  double project(Point p) const;

 private:
  std::vector<Point> waypoints_;
  std::vector<double> cumulative_;
};

struct CurveInterval {
  std::size_t target_id = 0;
  double s_left = 0.0;
  double s_right = 0.0;

  bool contains(double s, double tol = kDefaultEps) const {
    return s >= s_left - tol && s <= s_right + tol;
  }
  friend bool operator==(const CurveInterval&, const CurveInterval&) = default;
};

/// Result of intersecting a visibility region with a curve.
struct CurveVisibility {
  enum class Kind { kEmpty, kConnected, kViolated };
  Kind kind = Kind::kEmpty;
  /// One interval when connected, two or more disjoint pieces when violated.
  std::vector<CurveInterval> pieces;

  bool connected() const { return kind == Kind::kConnected; }
  const CurveInterval& interval() const { return pieces.front(); }
  /// Smallest interval containing all pieces.
  CurveInterval hull() const;
};

struct VisibilityRegion {
  Point kernel;
  std::vector<Point> boundary;

  bool contains(Point q, double eps = kDefaultEps) const;
  double area() const;
};

struct ChainVisibilityReport {
  struct Entry {
    CurveVisibility visibility;
    bool on_boundary = false;
  };
  std::vector<Entry> targets;
  bool pass = false;

  std::vector<std::size_t> violated() const;
  std::vector<std::size_t> empty() const;
};

/// True iff the closed segment pq stays in the closed polygon. Grazing a
/// reflex vertex or running along an edge counts as visible.
bool sees(const SimplePolygon& polygon, Point p, Point q);

VisibilityRegion visibility_polygon(const SimplePolygon& polygon, Point p);

struct GeodesicPath {
  std::vector<Point> polyline;
  double length = 0.0;
};

/// Euclidean shortest path inside the polygon via the reflex-vertex
/// visibility graph. Precomputes the graph once; queries are const.
class ShortestPathMap {
 public:
  explicit ShortestPathMap(const SimplePolygon& polygon);

  GeodesicPath path(Point s, Point t) const;
  double distance(Point s, Point t) const { return path(s, t).length; }

 private:
  SimplePolygon polygon_;
  std::vector<std::size_t> reflex_;
  std::vector<std::vector<double>> reflex_dist_;  // adjacency weights, inf if not visible
};

GeodesicPath shortest_path(const SimplePolygon& polygon, Point s, Point t);

CurveVisibility curve_interval(const SimplePolygon& polygon, const Curve& curve, Point x,
                               std::size_t target_id = 0);

ChainVisibilityReport check_chain_visibility(const SimplePolygon& polygon, const Curve& curve,
                                             std::span<const Point> targets);

/// Uniform points in the polygon by rejection from the bounding box.
std::vector<Point> sample_interior(const SimplePolygon& polygon, std::size_t count,
                                   std::uint64_t seed);

/// Seeded Monte-Carlo estimate of area(union VP(v)) / area(P).
/// Parallel over samples when OpenMP is enabled; result is independent of
/// the thread count.
double coverage_fraction(const SimplePolygon& polygon, std::span<const Point> viewpoints,
                         std::size_t sample_count, std::uint64_t seed);
/// Single-threaded reference kept for testing and benchmarking.
double coverage_fraction_serial(const SimplePolygon& polygon, std::span<const Point> viewpoints,
                                std::size_t sample_count, std::uint64_t seed);

}  // namespace watchroute
