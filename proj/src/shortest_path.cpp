#include <algorithm>
#include <limits>

#include "geometry_internal.hpp"
#include "watchroute/errors.hpp"
#include "watchroute/geometry.hpp"

namespace watchroute {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ShortestPathMap::ShortestPathMap(const SimplePolygon& polygon) : polygon_(polygon) {
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    if (polygon.is_reflex(i)) reflex_.push_back(i);
  }
  const std::size_t r = reflex_.size();
  reflex_dist_.assign(r, std::vector<double>(r, kInf));
  for (std::size_t i = 0; i < r; ++i) {
    reflex_dist_[i][i] = 0.0;
    for (std::size_t j = i + 1; j < r; ++j) {
      const Point a = polygon[reflex_[i]];
      const Point b = polygon[reflex_[j]];
      if (detail::sees_unchecked(polygon, a, b)) {
        reflex_dist_[i][j] = reflex_dist_[j][i] = watchroute::distance(a, b);
      }
    }
  }
}

GeodesicPath ShortestPathMap::path(Point s, Point t) const {
  const SimplePolygon& poly = polygon_;
  if (!poly.contains(s) || !poly.contains(t)) {
    throw DomainError("shortest_path: endpoint outside the polygon");
  }
  if (watchroute::distance(s, t) <= poly.eps()) return {{s}, 0.0};
  if (detail::sees_unchecked(poly, s, t)) return {{s, t}, watchroute::distance(s, t)};

  // Nodes: 0 = s, 1 = t, 2.. = reflex vertices.
  const std::size_t r = reflex_.size();
  const std::size_t n = r + 2;
  auto node_point = [&](std::size_t v) {
    return v == 0 ? s : v == 1 ? t : poly[reflex_[v - 2]];
  };
  std::vector<double> from_s(r), to_t(r);
  for (std::size_t i = 0; i < r; ++i) {
    const Point q = poly[reflex_[i]];
    from_s[i] = detail::sees_unchecked(poly, s, q) ? watchroute::distance(s, q) : kInf;
    to_t[i] = detail::sees_unchecked(poly, q, t) ? watchroute::distance(q, t) : kInf;
  }
  auto weight = [&](std::size_t u, std::size_t v) -> double {
    if (u == v) return 0.0;
    if (u > v) std::swap(u, v);
    if (u == 0 && v == 1) return kInf;  // handled above
    if (u == 0) return from_s[v - 2];
    if (u == 1) return to_t[v - 2];
    return reflex_dist_[u - 2][v - 2];
  };

  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> parent(n, n);
  std::vector<bool> done(n, false);
  dist[0] = 0.0;
  for (std::size_t iter = 0; iter < n; ++iter) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] < kInf && (u == n || dist[v] < dist[u])) u = v;
    }
    if (u == n || u == 1) break;
    done[u] = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double w = weight(u, v);
      if (dist[u] + w < dist[v]) {
        dist[v] = dist[u] + w;
        parent[v] = u;
      }
    }
  }
  if (dist[1] == kInf) throw DomainError("shortest_path: endpoints are not connected");
  GeodesicPath out;
  out.length = dist[1];
  for (std::size_t v = 1; v != n; v = parent[v]) {
    out.polyline.push_back(node_point(v));
    if (v == 0) break;
  }
  std::reverse(out.polyline.begin(), out.polyline.end());
  return out;
}

GeodesicPath shortest_path(const SimplePolygon& polygon, Point s, Point t) {
  return ShortestPathMap(polygon).path(s, t);
}

}  // namespace watchroute
