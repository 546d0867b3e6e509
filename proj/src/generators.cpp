#include "watchroute/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "watchroute/errors.hpp"

namespace watchroute {

namespace {

constexpr std::size_t kMaxAttempts = 200000;

std::vector<Point> u_polygon() {
  return {{0, 0}, {3, 0}, {3, 2}, {2, 2}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
}

/// Corridor [0,10]x[0,1] with rectangular pockets hanging off the top and
/// bottom walls; x-monotone, so a street polygon, and its midline sees it all.
Scene comb(std::mt19937_64& rng) {
  constexpr double width = 10.0;
  std::uniform_int_distribution<int> count(3, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int k = count(rng);
  const double slot = width / k;
  struct Tooth {
    double a, b, h;
    bool top;
  };
  std::vector<Tooth> teeth;
  for (int i = 0; i < k; ++i) {
    const double a = i * slot + (0.1 + 0.3 * u(rng)) * slot;
    const double b = a + (0.3 + 0.25 * u(rng)) * slot;
    teeth.push_back({a, b, 0.5 + 1.5 * u(rng), u(rng) < 0.5});
  }
  Scene s;
  s.polygon.push_back({0, 0});
  for (const Tooth& t : teeth) {
    if (t.top) continue;
    s.polygon.insert(s.polygon.end(), {{t.a, 0}, {t.a, -t.h}, {t.b, -t.h}, {t.b, 0}});
    s.pockets.push_back({{t.a, -t.h}, {t.b, 0}});
  }
  s.polygon.push_back({width, 0});
  s.polygon.push_back({width, 1});
  for (auto it = teeth.rbegin(); it != teeth.rend(); ++it) {
    if (!it->top) continue;
    s.polygon.insert(s.polygon.end(), {{it->b, 1}, {it->b, 1 + it->h}, {it->a, 1 + it->h}, {it->a, 1}});
    s.pockets.push_back({{it->a, 1}, {it->b, 1 + it->h}});
  }
  s.polygon.push_back({0, 1});
  s.curve = {{0.5, 0.5}, {width - 0.5, 0.5}};
  return s;
}

/// Star-shaped about the origin with radii in [0.6, 1] * 5.
Scene star(std::mt19937_64& rng) {
  constexpr double radius = 5.0;
  std::uniform_int_distribution<int> count(8, 14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int k = count(rng);
  Scene s;
  for (int i = 0; i < k; ++i) {
    const double theta = 2.0 * std::numbers::pi * (i + 0.4 * (u(rng) - 0.5)) / k;
    const double r = radius * (0.6 + 0.4 * u(rng));
    s.polygon.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  const double phi = std::numbers::pi * u(rng);
  const Point d{std::cos(phi), std::sin(phi)};
  s.curve = {-1.2 * d, 1.2 * d};
  return s;
}

Point uniform_in(const SimplePolygon::Box& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x);
  std::uniform_real_distribution<double> uy(box.lo.y, box.hi.y);
  const double x = ux(rng);
  return {x, uy(rng)};
}

Point interior_point(const SimplePolygon& poly, std::mt19937_64& rng) {
  const auto box = poly.bounding_box();
  for (std::size_t i = 0; i < kMaxAttempts; ++i) {
    const Point p = uniform_in(box, rng);
    if (poly.contains_strictly(p)) return p;
  }
  throw DomainError("generate: could not sample an interior point");
}

}  // namespace

std::string to_string(Environment e) {
  switch (e) {
    case Environment::kSquare: return "square";
    case Environment::kLShape: return "lshape";
    case Environment::kU2: return "u2";
    case Environment::kRandomStreet: return "random-street";
    case Environment::kRandomSimple: return "random-simple";
  }
  return "?";
}

Environment environment_from_string(const std::string& s) {
  for (Environment e : {Environment::kSquare, Environment::kLShape, Environment::kU2,
                        Environment::kRandomStreet, Environment::kRandomSimple}) {
    if (to_string(e) == s) return e;
  }
  throw DomainError("unknown environment '" + s + "'");
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Scene make_scene(Environment env, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, 0));
  switch (env) {
    case Environment::kSquare:
      return {{{0, 0}, {10, 0}, {10, 10}, {0, 10}}, {{1, 5}, {9, 5}}, {}};
    case Environment::kLShape:
      return {{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, {{1.5, 0.5}, {1, 1}, {0.5, 1.5}}, {}};
    case Environment::kU2:
      return {u_polygon(), {{0.5, 0.5}, {2.5, 0.5}}, {}};
    case Environment::kRandomStreet:
      return comb(rng);
    case Environment::kRandomSimple:
      return star(rng);
  }
  throw DomainError("make_scene: unknown environment");
}

InstanceDocument generate(const GenOptions& options) {
  if (options.m == 0) throw DomainError("generate: m must be positive");
  const Scene scene = make_scene(options.env, options.seed);
  const SimplePolygon poly(scene.polygon);
  InstanceDocument doc;
  doc.polygon = poly.vertices();
  doc.m = options.m;
  doc.t_m = options.t_m;
  doc.seed = options.seed;

  if (options.kind == ProblemKind::kStreet) {
    doc.curve = scene.curve;
    return doc;
  }

  std::mt19937_64 target_rng(mix_seed(options.seed, 1));
  std::vector<Point> targets;
  if (options.kind == ProblemKind::kChain) {
    const Curve curve(poly, scene.curve);
    doc.curve = scene.curve;
    std::size_t attempts = 0;
    while (targets.size() < options.targets) {
      if (++attempts > kMaxAttempts) throw DomainError("generate: target rejection sampling failed");
      const Point x = interior_point(poly, target_rng);
      if (curve_interval(poly, curve, x).connected()) targets.push_back(x);
    }
    doc.targets = std::move(targets);
    return doc;
  }

  std::mt19937_64 vp_rng(mix_seed(options.seed, 2));
  std::vector<Point> viewpoints;
  for (const auto& pocket : scene.pockets) {
    if (viewpoints.size() == options.viewpoints) break;
    viewpoints.push_back({(pocket.lo.x + pocket.hi.x) / 2, (pocket.lo.y + pocket.hi.y) / 2});
  }
  while (viewpoints.size() < options.viewpoints) viewpoints.push_back(interior_point(poly, vp_rng));

  std::size_t attempts = 0;
  while (targets.size() < options.targets) {
    if (++attempts > kMaxAttempts) throw DomainError("generate: target rejection sampling failed");
    Point x;
    if (scene.pockets.empty()) {
      x = interior_point(poly, target_rng);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, scene.pockets.size() - 1);
      x = uniform_in(scene.pockets[pick(target_rng)], target_rng);
      if (!poly.contains_strictly(x)) continue;
    }
    for (const Point& v : viewpoints) {
      if (sees(poly, v, x)) {
        targets.push_back(x);
        break;
      }
    }
  }

  std::mt19937_64 depot_rng(mix_seed(options.seed, 3));
  DepotScenario scenario;
  scenario.kind = options.scenario;
  const std::size_t depots = options.scenario == DepotKind::kSameDepot    ? 1
                             : options.scenario == DepotKind::kSameFinish ? options.m + 1
                                                                          : options.m;
  for (std::size_t i = 0; i < depots; ++i) {
    scenario.depots.push_back(scene.pockets.empty() ? interior_point(poly, depot_rng)
                                                    : Point{0.5 + 9.0 * i / depots, 0.5});
  }
  doc.targets = std::move(targets);
  doc.viewpoints = std::move(viewpoints);
  doc.depots = std::move(scenario);
  return doc;
}

}  // namespace watchroute
