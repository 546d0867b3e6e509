#include "watchroute/street_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geometry_internal.hpp"
#include "watchroute/errors.hpp"
#include "watchroute/log.hpp"

namespace watchroute {

namespace {

Point unit(Point v) {
  const double n = norm(v);
  return n > 0.0 ? (1.0 / n) * v : Point{};
}

Point left_normal(Point a, Point b) {
  const Point e = unit(b - a);
  return {-e.y, e.x};
}

/// Moves a boundary point a hair into the interior when that stays inside.
Point nudge(const SimplePolygon& polygon, Point q, Point inward, double delta) {
  const Point moved = q + delta * unit(inward);
  return polygon.contains_strictly(moved) ? moved : q;
}

/// First boundary point hit by the ray from vertex v along u, skipping the
/// edges incident to v. nullopt when the ray leaves through the vertex.
std::optional<std::pair<Point, std::size_t>> ray_hit(const SimplePolygon& polygon, std::size_t v,
                                                     Point u) {
  const Point p = polygon[v];
  const std::size_t n = polygon.size();
  double best = std::numeric_limits<double>::infinity();
  std::size_t edge = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == v || (i + 1) % n == v) continue;
    const Point a = polygon[i];
    const Point e = polygon.next(i) - a;
    const double denom = cross(u, e);
    if (std::abs(denom) < 1e-14 * norm(e)) continue;
    const double t = cross(a - p, e) / denom;
    const double s = cross(a - p, u) / denom;
    if (t > polygon.eps() && s >= 0.0 && s <= 1.0 && t < best) {
      best = t;
      edge = i;
    }
  }
  if (edge == n) return std::nullopt;
  const Point hit = p + best * u;
  if (!polygon.contains(p + (0.5 * best) * u)) return std::nullopt;
  return std::pair{hit, edge};
}

CurveInterval interval_of(const SimplePolygon& polygon, const Curve& curve, Point w, std::size_t id,
                          bool& empty, bool& violated) {
  const CurveVisibility vis = curve_interval(polygon, curve, w, id);
  empty = vis.kind == CurveVisibility::Kind::kEmpty;
  violated = vis.kind == CurveVisibility::Kind::kViolated;
  if (empty) return {id, 0.0, 0.0};
  return violated ? vis.hull() : vis.interval();
}

std::vector<CurveInterval> finish_intervals(std::vector<CurveInterval> out,
                                            const std::vector<char>& empty,
                                            const std::vector<char>& violated) {
  std::vector<std::size_t> unseen;
  std::size_t broken = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (empty[i]) unseen.push_back(i);
    if (violated[i]) ++broken;
  }
  if (!unseen.empty()) {
    throw InfeasibleError("witness point " + std::to_string(unseen.front()) +
                              " is not visible from the curve",
                          unseen);
  }
  if (broken > 0) {
    log::warn("{} witness points see the curve in several pieces; using interval hulls", broken);
  }
  return out;
}

}  // namespace

std::vector<CurveInterval> witness_intervals(const SimplePolygon& polygon, const Curve& curve,
                                             std::span<const Point> points) {
  const std::size_t n = points.size();
  std::vector<CurveInterval> out(n);
  std::vector<char> empty(n, 0), violated(n, 0);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    bool e = false, v = false;
    out[i] = interval_of(polygon, curve, points[i], i, e, v);
    empty[i] = e;
    violated[i] = v;
  }
  return finish_intervals(std::move(out), empty, violated);
}

std::vector<CurveInterval> witness_intervals_serial(const SimplePolygon& polygon,
                                                    const Curve& curve,
                                                    std::span<const Point> points) {
  const std::size_t n = points.size();
  std::vector<CurveInterval> out(n);
  std::vector<char> empty(n, 0), violated(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    bool e = false, v = false;
    out[i] = interval_of(polygon, curve, points[i], i, e, v);
    empty[i] = e;
    violated[i] = v;
  }
  return finish_intervals(std::move(out), empty, violated);
}

std::vector<Point> street_witness_points(const SimplePolygon& polygon,
                                         const StreetOptions& options) {
  const auto box = polygon.bounding_box();
  const double delta = 1e-6 * std::max(1.0, distance(box.lo, box.hi));
  const std::size_t n = polygon.size();
  std::vector<Point> out;

  for (std::size_t i = 0; i < n; ++i) {
    const Point v = polygon[i];
    Point bis = unit(polygon.prev(i) - v) + unit(polygon.next(i) - v);
    if (norm(bis) < 1e-9) bis = left_normal(v, polygon.next(i));
    if (polygon.is_reflex(i)) bis = -1.0 * bis;
    out.push_back(nudge(polygon, v, bis, delta));
  }

  if (options.boundary_witnesses > 0) {
    const double step = polygon.perimeter() / static_cast<double>(options.boundary_witnesses);
    double start = 0.0;  // perimeter position of the current edge's tail
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = polygon[i];
      const Point b = polygon.next(i);
      const double len = distance(a, b);
      for (; k < options.boundary_witnesses; ++k) {
        const double s = (static_cast<double>(k) + 0.5) * step - start;
        if (s >= len) break;
        out.push_back(nudge(polygon, a + (s / len) * (b - a), left_normal(a, b), delta));
      }
      start += len;
    }
  }

  // Window endpoints: extend both edges at each reflex vertex until they
  // hit the boundary.
  for (std::size_t i = 0; i < n; ++i) {
    if (!polygon.is_reflex(i)) continue;
    const Point v = polygon[i];
    for (const Point from : {polygon.prev(i), polygon.next(i)}) {
      const auto hit = ray_hit(polygon, i, unit(v - from));
      if (!hit) continue;
      const Point a = polygon[hit->second];
      const Point b = polygon.next(hit->second);
      out.push_back(nudge(polygon, hit->first, left_normal(a, b), delta));
    }
  }

  const std::vector<Point> inner = sample_interior(polygon, options.interior_witnesses, options.seed);
  out.insert(out.end(), inner.begin(), inner.end());
  return out;
}

StreetModel::StreetModel(const SimplePolygon& polygon, const Curve& curve,
                         const StreetOptions& options)
    : polygon_(polygon),
      curve_(curve),
      witnesses_(street_witness_points(polygon, options)),
      cover_(witness_intervals(polygon, curve, witnesses_), curve.length()) {}

void StreetModel::add_witnesses(std::span<const Point> points) {
  std::vector<CurveInterval> all = cover_.intervals();
  for (CurveInterval iv : witness_intervals(polygon_, curve_, points)) {
    iv.target_id += witnesses_.size();
    all.push_back(iv);
  }
  witnesses_.insert(witnesses_.end(), points.begin(), points.end());
  cover_ = IntervalCover(std::move(all), curve_.length());
}

std::vector<Point> StreetModel::unseen(std::span<const Point> viewpoints,
                                       std::span<const Point> samples) const {
  std::vector<char> hidden(samples.size(), 0);
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const Point q = samples[static_cast<std::size_t>(k)];
    hidden[static_cast<std::size_t>(k)] =
        std::none_of(viewpoints.begin(), viewpoints.end(),
                     [&](Point v) { return detail::sees_unchecked(polygon_, v, q); });
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (hidden[i]) out.push_back(samples[i]);
  }
  return out;
}

namespace {

std::vector<Point> plan_points(const Curve& curve, const RoutePlan& plan) {
  std::vector<Point> out;
  for (const PathOnCurve& p : plan.paths) {
    for (double s : p.viewpoints) out.push_back(curve.at(s));
  }
  return out;
}

constexpr std::size_t kMaxNewWitnesses = 64;

}  // namespace

StreetSolution solve_street(const StreetInstance& instance, const StreetOptions& options) {
  StreetModel model(instance.polygon, instance.curve, options);

  StreetSearch search;
  for (std::size_t round = 0;; ++round) {
    search = solve_street_intervals(model.cover(), instance.m, instance.t_m, options.rel_tol);
    if (round >= options.refine_rounds || options.refine_samples == 0) break;
    // Guard against gaps in the witness set: both the greedy chain and the
    // plan itself must see a fresh batch of samples.
    std::vector<Point> probes;
    for (double s : search.g_star) probes.push_back(instance.curve.at(s));
    const std::vector<Point> samples =
        sample_interior(instance.polygon, options.refine_samples, options.seed + 1 + round);
    std::vector<Point> missed = model.unseen(probes, samples);
    const std::vector<Point> by_plan = model.unseen(plan_points(instance.curve, search.plan), samples);
    missed.insert(missed.end(), by_plan.begin(), by_plan.end());
    if (missed.empty()) break;
    if (missed.size() > kMaxNewWitnesses) missed.resize(kMaxNewWitnesses);
    log::debug("street refinement round {}: {} new witnesses", round, missed.size());
    model.add_witnesses(missed);
  }

  StreetSolution out;
  out.plan = std::move(search.plan);
  out.g_star = std::move(search.g_star);
  out.trace = std::move(search.trace);
  out.guess = search.guess;
  out.witnesses = model.witnesses();
  if (options.verify_samples > 0) {
    const std::vector<Point> pts = plan_points(instance.curve, out.plan);
    out.coverage = coverage_fraction(instance.polygon, pts, options.verify_samples,
                                     options.seed ^ 0x9e3779b97f4a7c15ULL);
  }
  return out;
}

}  // namespace watchroute
