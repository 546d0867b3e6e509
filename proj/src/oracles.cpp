#include "watchroute/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "watchroute/errors.hpp"

namespace watchroute::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double crs(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double dt(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double len(Point a) { return std::sqrt(dt(a, a)); }

double seg_dist(Point a, Point b, Point p) {
  const Point ab = b - a;
  const double l2 = dt(ab, ab);
  double t = l2 > 0.0 ? dt(p - a, ab) / l2 : 0.0;
  t = std::max(0.0, std::min(1.0, t));
  return len(p - (a + t * ab));
}

int sign(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

/// Cumulative arc lengths of a polyline.
std::vector<double> arclen(std::span<const Point> curve) {
  std::vector<double> out{0.0};
  for (std::size_t i = 1; i < curve.size(); ++i) out.push_back(out.back() + len(curve[i] - curve[i - 1]));
  return out;
}

Point curve_point(std::span<const Point> curve, const std::vector<double>& cum, double s) {
  if (curve.size() == 1 || s <= 0.0) return curve.front();
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (s <= cum[i] || i + 1 == curve.size()) {
      const double seg = cum[i] - cum[i - 1];
      const double t = seg > 0.0 ? std::min(1.0, (s - cum[i - 1]) / seg) : 0.0;
      return curve[i - 1] + t * (curve[i] - curve[i - 1]);
    }
  }
  return curve.back();
}

std::vector<double> grid_positions(double length, std::size_t grid) {
  if (grid < 2 || length <= 0.0) return {0.0};
  std::vector<double> out(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    out[k] = length * static_cast<double>(k) / static_cast<double>(grid - 1);
  }
  return out;
}

}  // namespace

bool inside(std::span<const Point> ring, Point p, double eps) {
  const std::size_t n = ring.size();
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i];
    const Point b = ring[(i + 1) % n];
    if (seg_dist(a, b, p) <= eps) return true;
    const double side = crs(b - a, p - a);
    if (a.y <= p.y) {
      if (b.y > p.y && side > 0) ++winding;
    } else if (b.y <= p.y && side < 0) {
      --winding;
    }
  }
  return winding != 0;
}

bool sees(std::span<const Point> ring, Point p, Point q, double eps) {
  if (!inside(ring, p, eps) || !inside(ring, q, eps)) return false;
  const Point d = q - p;
  const double l = len(d);
  if (l <= eps) return true;
  const std::size_t n = ring.size();
  std::vector<double> touch{0.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i];
    const Point b = ring[(i + 1) % n];
    const double el = len(b - a);
    // A transversal crossing through the interior of an edge leaves P.
    const int s1 = sign(crs(d, a - p) / l, eps);
    const int s2 = sign(crs(d, b - p) / l, eps);
    const int s3 = sign(crs(b - a, p - a) / el, eps);
    const int s4 = sign(crs(b - a, q - a) / el, eps);
    if (s1 * s2 < 0 && s3 * s4 < 0) return false;
    if (seg_dist(p, q, a) <= eps) touch.push_back(std::clamp(dt(a - p, d) / (l * l), 0.0, 1.0));
  }
  std::sort(touch.begin(), touch.end());
  for (std::size_t k = 0; k + 1 < touch.size(); ++k) {
    if ((touch[k + 1] - touch[k]) * l <= eps) continue;
    if (!inside(ring, p + (0.5 * (touch[k] + touch[k + 1])) * d, eps)) return false;
  }
  return true;
}

std::optional<CurveInterval> sampled_interval(std::span<const Point> ring,
                                              std::span<const Point> curve, Point x,
                                              std::size_t grid, std::size_t target_id) {
  const std::vector<double> cum = arclen(curve);
  const std::vector<double> s = grid_positions(cum.back(), grid);
  auto vis = [&](double at) { return sees(ring, x, curve_point(curve, cum, at)); };
  std::optional<std::size_t> first, last;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (vis(s[k])) {
      if (!first) first = k;
      last = k;
    }
  }
  if (!first) return std::nullopt;
  // The bisection runs with a tight tolerance: a grazing slack of eps at a
  // reflex vertex moves the endpoint by eps times the lever ratio.
  auto tight = [&](double at) { return sees(ring, x, curve_point(curve, cum, at), 1e-13); };
  auto refine = [&](double in, double out) {
    for (int it = 0; it < 80 && std::abs(out - in) > 1e-14; ++it) {
      const double mid = 0.5 * (in + out);
      (tight(mid) ? in : out) = mid;
    }
    return in;
  };
  CurveInterval iv{target_id, s[*first], s[*last]};
  if (*first > 0) iv.s_left = refine(s[*first], s[*first - 1]);
  if (*last + 1 < s.size()) iv.s_right = refine(s[*last], s[*last + 1]);
  return iv;
}

namespace {

/// Minimum over splits of sorted viewpoints `v` into at most m consecutive
/// groups of the largest group cost.
double best_split(const std::vector<double>& v, std::size_t m, double t_m) {
  const std::size_t k = v.size();
  auto group = [&](std::size_t a, std::size_t b) {  // [a, b)
    return (v[b - 1] - v[a]) + static_cast<double>(b - a) * t_m;
  };
  double best = group(0, k);
  if (m >= 2) {
    for (std::size_t c1 = 1; c1 < k; ++c1) {
      best = std::min(best, std::max(group(0, c1), group(c1, k)));
      if (m >= 3) {
        for (std::size_t c2 = c1 + 1; c2 < k; ++c2) {
          best = std::min(best, std::max({group(0, c1), group(c1, c2), group(c2, k)}));
        }
      }
    }
  }
  return best;
}

std::vector<double> distinct_endpoints(std::span<const CurveInterval> intervals) {
  std::vector<double> e;
  for (const CurveInterval& iv : intervals) {
    e.push_back(iv.s_left);
    e.push_back(iv.s_right);
  }
  std::sort(e.begin(), e.end());
  std::vector<double> out;
  for (double x : e) {
    if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
  }
  return out;
}

double subset_value(std::span<const CurveInterval> intervals, const std::vector<double>& e,
                    std::uint32_t mask, std::size_t m, double t_m) {
  std::vector<double> v;
  for (std::size_t b = 0; b < e.size(); ++b) {
    if (mask & (1u << b)) v.push_back(e[b]);
  }
  for (const CurveInterval& iv : intervals) {
    const bool hit = std::any_of(v.begin(), v.end(), [&](double x) {
      return x >= iv.s_left - 1e-12 && x <= iv.s_right + 1e-12;
    });
    if (!hit) return kInf;
  }
  return best_split(v, m, t_m);
}

void check_chain_caps(std::size_t targets, std::size_t m) {
  if (targets > 6 || m > 3 || m == 0) {
    throw CapacityError("brute_chain: needs at most 6 targets and 1 <= m <= 3");
  }
}

}  // namespace

double brute_chain_intervals(std::span<const CurveInterval> intervals, std::size_t m, double t_m) {
  check_chain_caps(intervals.size(), m);
  if (intervals.empty()) return 0.0;
  const std::vector<double> e = distinct_endpoints(intervals);
  const auto masks = static_cast<std::int64_t>(1) << e.size();
  double best = kInf;
#pragma omp parallel for reduction(min : best) schedule(dynamic, 64)
  for (std::int64_t mask = 1; mask < masks; ++mask) {
    best = std::min(best, subset_value(intervals, e, static_cast<std::uint32_t>(mask), m, t_m));
  }
  return best;
}

double brute_chain_intervals_serial(std::span<const CurveInterval> intervals, std::size_t m,
                                    double t_m) {
  check_chain_caps(intervals.size(), m);
  if (intervals.empty()) return 0.0;
  const std::vector<double> e = distinct_endpoints(intervals);
  const std::uint32_t masks = 1u << e.size();
  double best = kInf;
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    best = std::min(best, subset_value(intervals, e, mask, m, t_m));
  }
  return best;
}

double brute_chain(const ChainInstance& instance, std::size_t grid) {
  check_chain_caps(instance.targets.size(), instance.m);
  const auto& ring = instance.polygon.vertices();
  const auto& curve = instance.curve.waypoints();
  std::vector<CurveInterval> intervals;
  for (std::size_t i = 0; i < instance.targets.size(); ++i) {
    const auto iv = sampled_interval(ring, curve, instance.targets[i], grid, i);
    if (!iv) throw InfeasibleError("brute_chain: target " + std::to_string(i) + " unseen", {i});
    intervals.push_back(*iv);
  }
  return brute_chain_intervals(intervals, instance.m, instance.t_m);
}

namespace {

struct GridSpan {
  long a = -1, b = -1;  // first and last grid index seeing the witness
};

StreetOracleResult street_dp(const std::vector<GridSpan>& spans, const std::vector<double>& x,
                             std::size_t m, double t_m) {
  const long g = static_cast<long>(x.size());
  StreetOracleResult out;
  out.gap = (x.size() > 1 ? x[1] - x[0] : 0.0) + t_m;
  for (const GridSpan& s : spans) {
    if (s.a < 0) return out;
  }
  out.feasible = true;
  if (spans.empty()) return out;

  // jump[p]: smallest right end among witnesses starting after p.
  std::vector<long> jump(static_cast<std::size_t>(g), g);
  std::vector<long> min_b_from(static_cast<std::size_t>(g + 1), g);
  for (const GridSpan& s : spans) {
    min_b_from[static_cast<std::size_t>(s.a)] = std::min(min_b_from[static_cast<std::size_t>(s.a)], s.b);
  }
  for (long p = g - 1; p >= 0; --p) {
    min_b_from[static_cast<std::size_t>(p)] =
        std::min(min_b_from[static_cast<std::size_t>(p)], min_b_from[static_cast<std::size_t>(p + 1)]);
  }
  for (long p = 0; p < g; ++p) jump[static_cast<std::size_t>(p)] = min_b_from[static_cast<std::size_t>(p + 1)];

  // max_a_before[s]: largest start among witnesses ending before s.
  std::vector<long> max_a_before(static_cast<std::size_t>(g + 1), -1);
  for (const GridSpan& s : spans) {
    auto& slot = max_a_before[static_cast<std::size_t>(s.b + 1)];
    slot = std::max(slot, s.a);
  }
  for (long p = 1; p <= g; ++p) {
    max_a_before[static_cast<std::size_t>(p)] =
        std::max(max_a_before[static_cast<std::size_t>(p)], max_a_before[static_cast<std::size_t>(p - 1)]);
  }
  long min_b = g, max_a = -1;
  for (const GridSpan& s : spans) {
    min_b = std::min(min_b, s.b);
    max_a = std::max(max_a, s.a);
  }

  // cost[s][e] of the path [s, e] covering witnesses starting in (s, e].
  std::vector<double> cost(static_cast<std::size_t>(g * g), kInf);
  for (long s = 0; s < g; ++s) {
    std::vector<long> chain;
    for (long c = jump[static_cast<std::size_t>(s)]; c < g; c = jump[static_cast<std::size_t>(c)]) {
      chain.push_back(c);
    }
    std::size_t inner = 0;
    for (long e = s; e < g; ++e) {
      while (inner < chain.size() && chain[inner] < e) ++inner;
      const double count = 1.0 + static_cast<double>(inner) + (e > s ? 1.0 : 0.0);
      cost[static_cast<std::size_t>(s * g + e)] =
          x[static_cast<std::size_t>(e)] - x[static_cast<std::size_t>(s)] + count * t_m;
    }
  }

  std::vector<double> best(static_cast<std::size_t>(g), kInf);
  for (long e = 0; e < g; ++e) {
    for (long s = 0; s <= std::min(e, min_b); ++s) {
      best[static_cast<std::size_t>(e)] =
          std::min(best[static_cast<std::size_t>(e)], cost[static_cast<std::size_t>(s * g + e)]);
    }
  }
  double answer = kInf;
  for (std::size_t k = 1;; ++k) {
    for (long e = std::max(0L, max_a); e < g; ++e) answer = std::min(answer, best[static_cast<std::size_t>(e)]);
    if (k == m) break;
    std::vector<double> next(static_cast<std::size_t>(g), kInf);
    for (long s = 1; s < g; ++s) {
      double pre = kInf;
      for (long e = std::max(0L, max_a_before[static_cast<std::size_t>(s)]); e < s; ++e) {
        pre = std::min(pre, best[static_cast<std::size_t>(e)]);
      }
      if (pre == kInf) continue;
      for (long e = s; e < g; ++e) {
        const double v = std::max(pre, cost[static_cast<std::size_t>(s * g + e)]);
        next[static_cast<std::size_t>(e)] = std::min(next[static_cast<std::size_t>(e)], v);
      }
    }
    best = std::move(next);
  }
  out.makespan = answer;
  out.feasible = answer < kInf;
  return out;
}

GridSpan span_of(std::span<const Point> ring, const std::vector<Point>& samples, Point w) {
  GridSpan s;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (sees(ring, w, samples[k])) {
      if (s.a < 0) s.a = static_cast<long>(k);
      s.b = static_cast<long>(k);
    }
  }
  return s;
}

void check_street_caps(std::size_t grid, std::size_t m) {
  if (grid < 2 || grid > 400 || m == 0) throw CapacityError("brute_street: needs 2 <= grid <= 400, m >= 1");
}

std::vector<Point> grid_points(std::span<const Point> curve, std::vector<double>& x,
                               std::size_t grid) {
  const std::vector<double> cum = arclen(curve);
  x = grid_positions(cum.back(), grid);
  std::vector<Point> out;
  for (double s : x) out.push_back(curve_point(curve, cum, s));
  return out;
}

}  // namespace

StreetOracleResult brute_street(std::span<const Point> ring, std::span<const Point> curve,
                                std::span<const Point> witnesses, std::size_t m, double t_m,
                                std::size_t grid) {
  check_street_caps(grid, m);
  std::vector<double> x;
  const std::vector<Point> samples = grid_points(curve, x, grid);
  std::vector<GridSpan> spans(witnesses.size());
  const auto count = static_cast<std::ptrdiff_t>(witnesses.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    spans[static_cast<std::size_t>(i)] = span_of(ring, samples, witnesses[static_cast<std::size_t>(i)]);
  }
  return street_dp(spans, x, m, t_m);
}

StreetOracleResult brute_street_serial(std::span<const Point> ring, std::span<const Point> curve,
                                       std::span<const Point> witnesses, std::size_t m,
                                       double t_m, std::size_t grid) {
  check_street_caps(grid, m);
  std::vector<double> x;
  const std::vector<Point> samples = grid_points(curve, x, grid);
  std::vector<GridSpan> spans;
  for (const Point& w : witnesses) spans.push_back(span_of(ring, samples, w));
  return street_dp(spans, x, m, t_m);
}

double brute_gtsp(const GtspInstance& g) {
  const std::size_t n = g.viewpoints.size();
  const std::size_t m = g.m;
  if (n > 8 || m > 2 || m == 0) throw CapacityError("brute_gtsp: needs |V| <= 8 and m <= 2");

  std::vector<std::uint32_t> cluster_mask;
  for (const auto& c : g.clusters) {
    std::uint32_t mask = 0;
    for (std::size_t v : c) mask |= 1u << v;
    cluster_mask.push_back(mask);
  }
  auto covers = [&](std::uint32_t s) {
    return std::all_of(cluster_mask.begin(), cluster_mask.end(),
                       [&](std::uint32_t c) { return (c & s) != 0; });
  };

  // Best route from start r through all of `set` to finish slot f.
  auto route = [&](std::size_t r, std::size_t f, std::uint32_t set) {
    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < n; ++v) {
      if (set & (1u << v)) order.push_back(v);
    }
    if (order.empty()) return g.depot_cost[r][f];
    double best = kInf;
    do {
      double c = g.start_cost[r][order.front()] + g.finish_cost[f][order.back()];
      for (std::size_t k = 0; k + 1 < order.size(); ++k) c += g.cost[order[k]][order[k + 1]];
      best = std::min(best, c);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
  };

  std::vector<std::vector<std::size_t>> finishes;  // finish slot per robot
  std::vector<std::size_t> perm(m);
  for (std::size_t r = 0; r < m; ++r) perm[r] = r;
  if (g.scenario.kind == DepotKind::kInterchangeable) {
    do finishes.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    finishes.push_back(perm);
  }

  double best = kInf;
  const std::uint32_t all = 1u << n;
  for (std::uint32_t s = 0; s < all; ++s) {
    if (!covers(s)) continue;
    bool minimal = true;
    for (std::size_t v = 0; v < n && minimal; ++v) {
      if ((s & (1u << v)) && covers(s & ~(1u << v))) minimal = false;
    }
    if (!minimal) continue;
    // Split s between robots: robot 0 takes `part`, robot 1 the rest.
    for (std::uint32_t part = s;; part = (part - 1) & s) {
      if (m == 1 && part != s) break;
      for (const auto& fin : finishes) {
        double total = route(0, fin[0], part);
        if (m == 2) total += route(1, fin[1], s & ~part);
        best = std::min(best, total);
      }
      if (part == 0) break;
    }
  }
  return best;
}

double brute_geodesic(std::span<const Point> ring, Point s, Point t, double eps) {
  std::vector<Point> nodes{s, t};
  nodes.insert(nodes.end(), ring.begin(), ring.end());
  const std::size_t n = nodes.size();
  std::vector<double> dist(n, kInf);
  std::vector<char> done(n, 0);
  dist[0] = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] < kInf && (u == n || dist[v] < dist[u])) u = v;
    }
    if (u == n) break;
    done[u] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double w = len(nodes[v] - nodes[u]);
      if (dist[u] + w < dist[v] && sees(ring, nodes[u], nodes[v], eps)) dist[v] = dist[u] + w;
    }
  }
  return dist[1];
}

std::vector<RaySample> raycast_vp(std::span<const Point> ring, Point p, std::size_t rays,
                                  std::uint64_t seed, double eps) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const std::size_t n = ring.size();
  std::vector<RaySample> out;
  out.reserve(rays);
  for (std::size_t k = 0; k < rays; ++k) {
    const double a = angle(rng);
    const Point u{std::cos(a), std::sin(a)};
    double hit = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      const Point e0 = ring[i];
      const Point e = ring[(i + 1) % n] - e0;
      const double den = crs(u, e);
      if (den == 0.0) continue;
      const double t = crs(e0 - p, e) / den;
      const double s = crs(e0 - p, u) / den;
      if (t > eps && s >= 0.0 && s <= 1.0) hit = std::min(hit, t);
    }
    RaySample r{u, 0.0};
    if (hit < kInf && inside(ring, p + (0.5 * std::min(hit, 1e-6)) * u, 0.0)) r.distance = hit;
    out.push_back(r);
  }
  return out;
}

}  // namespace watchroute::oracle
