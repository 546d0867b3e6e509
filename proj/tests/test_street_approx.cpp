#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "watchroute/errors.hpp"
#include "watchroute/generators.hpp"
#include "watchroute/oracles.hpp"
#include "watchroute/street_approx.hpp"

using namespace watchroute;

namespace {

std::vector<CurveInterval> ivs(std::initializer_list<std::pair<double, double>> list) {
  std::vector<CurveInterval> out;
  for (auto [l, r] : list) out.push_back({out.size(), l, r});
  return out;
}

std::vector<CurveInterval> random_intervals(std::mt19937_64& rng, std::size_t n, double length) {
  std::uniform_real_distribution<double> pos(0.0, length);
  std::uniform_real_distribution<double> width(0.0, 0.25 * length);
  std::vector<CurveInterval> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = pos(rng);
    out.push_back({i, l, std::min(length, l + width(rng))});
  }
  return out;
}

/// Corridor [0,4]x[0,1] with two deep pockets on top.
std::vector<Point> two_pockets() {
  return {{0, 0}, {4, 0}, {4, 1}, {3.8, 1}, {3.8, 3}, {3.2, 3}, {3.2, 1},
          {0.8, 1}, {0.8, 3}, {0.2, 3}, {0.2, 1}, {0, 1}};
}

/// Smallest k such that some k grid positions of the curve see every
/// witness, by exhaustive search over k-subsets (k <= 3).
std::size_t min_grid_viewpoints(const SimplePolygon& poly, const Curve& curve,
                                const std::vector<Point>& witnesses, std::size_t grid) {
  std::vector<std::vector<bool>> vis(grid, std::vector<bool>(witnesses.size()));
  for (std::size_t g = 0; g < grid; ++g) {
    const Point c = curve.at(curve.length() * static_cast<double>(g) / static_cast<double>(grid - 1));
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
      vis[g][w] = oracle::sees(poly.vertices(), c, witnesses[w]);
    }
  }
  auto covers = [&](std::initializer_list<std::size_t> pick) {
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
      if (std::none_of(pick.begin(), pick.end(), [&](std::size_t g) { return vis[g][w]; })) return false;
    }
    return true;
  };
  for (std::size_t a = 0; a < grid; ++a) {
    if (covers({a})) return 1;
  }
  for (std::size_t a = 0; a < grid; ++a) {
    for (std::size_t b = a + 1; b < grid; ++b) {
      if (covers({a, b})) return 2;
    }
  }
  for (std::size_t a = 0; a < grid; ++a) {
    for (std::size_t b = a + 1; b < grid; ++b) {
      for (std::size_t c = b + 1; c < grid; ++c) {
        if (covers({a, b, c})) return 3;
      }
    }
  }
  return 4;
}

StreetOptions light_options() {
  StreetOptions opt;
  opt.interior_witnesses = 500;
  opt.refine_samples = 5000;
  opt.verify_samples = 20000;
  return opt;
}

}  // namespace

TEST_CASE("interval cover primitives") {
  const IntervalCover cover(ivs({{0, 2}, {1, 3}, {4, 5}, {0.5, 6}}), 6.0);
  REQUIRE(cover.minimal().size() == 3);
  CHECK(cover.first_viewpoint() == 2.0);
  CHECK(cover.limit_point(2.0) == 5.0);
  CHECK(cover.limit_point(0.5) == 3.0);
  CHECK_FALSE(cover.limit_point(5.0).has_value());
  CHECK_FALSE(cover.limit_point(6.0).has_value());
  CHECK(cover.min_viewpoints() == std::vector<double>{2, 5});
  CHECK(cover.covered_by(std::vector<double>{2, 5}));
  CHECK(cover.uncovered(std::vector<double>{2}) == std::vector<std::size_t>{2});
}

TEST_CASE("greedy chain is a minimum stabbing set") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto intervals = random_intervals(rng, 6, 10.0);
    const IntervalCover cover(intervals, 10.0);
    const auto g = cover.min_viewpoints();
    CHECK(cover.covered_by(g));
    std::vector<double> cand;
    for (const auto& iv : intervals) cand.push_back(iv.s_right);
    std::size_t best = cand.size();
    for (std::uint32_t mask = 1; mask < (1u << cand.size()); ++mask) {
      std::vector<double> pts;
      for (std::size_t k = 0; k < cand.size(); ++k) {
        if (mask >> k & 1) pts.push_back(cand[k]);
      }
      if (cover.covered_by(pts)) best = std::min(best, pts.size());
    }
    CHECK(g.size() == best);
  }
}

TEST_CASE("convex polygon") {
  const SimplePolygon sq(fixtures::unit_square());
  const Curve c(sq, {{0.2, 0.5}, {0.8, 0.5}});
  const StreetModel model(sq, c, light_options());
  CHECK(model.cover().first_viewpoint() == doctest::Approx(c.length()));
  CHECK(model.cover().min_viewpoints().size() == 1);
  for (double p : {0.0, 0.3, 0.6}) CHECK_FALSE(model.cover().limit_point(p).has_value());

  const auto g = model.cover().min_viewpoints();
  const GuessResult r = street_subroutine(model.cover(), g, 1.0, 1.0, 1);
  REQUIRE(r.success());
  CHECK(r.paths[0].viewpoints.size() == 1);
  CHECK(r.paths[0].cost == doctest::Approx(1.0));

  const StreetSolution sol = solve_street({sq, c, 1, 1.0}, light_options());
  CHECK(sol.plan.makespan == doctest::Approx(1.0));
  CHECK(sol.coverage == 1.0);
}

TEST_CASE("first viewpoint matches prefix-visibility sampling") {
  const SimplePolygon u(fixtures::u_polygon());
  const Curve c(u, fixtures::u_curve());
  StreetOptions opt = light_options();
  opt.interior_witnesses = 300;
  const StreetModel model(u, c, opt);
  const double g1 = model.cover().first_viewpoint();
  // The corner (1,2) of the left tower sees the curve only while x <= 1.
  CHECK(g1 == doctest::Approx(0.5).epsilon(1e-5));

  // First grid position whose view already contains everything the prefix saw.
  const std::size_t grid = 2001;
  const auto& w = model.witnesses();
  std::vector<bool> seen_by_prefix(w.size(), false);
  double found = -1.0;
  for (std::size_t k = 0; k < grid && found < 0; ++k) {
    const double s = c.length() * static_cast<double>(k) / static_cast<double>(grid - 1);
    bool collapses = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const bool now = oracle::sees(u.vertices(), c.at(s), w[i]);
      seen_by_prefix[i] = seen_by_prefix[i] || now;
      if (seen_by_prefix[i] && !now) collapses = false;
    }
    if (!collapses) found = c.length() * static_cast<double>(k - 1) / static_cast<double>(grid - 1);
  }
  CHECK(std::abs(found - g1) <= 1e-3 + 1e-9);
}

TEST_CASE("greedy chain size against exhaustive grid search") {
  SUBCASE("U polygon") {
    const SimplePolygon u(fixtures::u_polygon());
    const Curve c(u, fixtures::u_curve());
    StreetOptions opt = light_options();
    opt.interior_witnesses = 150;
    const StreetModel model(u, c, opt);
    CHECK(model.cover().min_viewpoints().size() == min_grid_viewpoints(u, c, model.witnesses(), 200));
    CHECK(model.cover().min_viewpoints().size() == 2);
  }
  SUBCASE("two deep pockets") {
    const SimplePolygon p(two_pockets());
    const Curve c(p, {{0.5, 0.5}, {3.5, 0.5}});
    StreetOptions opt = light_options();
    opt.interior_witnesses = 150;
    const StreetModel model(p, c, opt);
    CHECK(model.cover().min_viewpoints().size() == 2);
    CHECK(min_grid_viewpoints(p, c, model.witnesses(), 200) == 2);
  }
}

TEST_CASE("limit point on the two-pocket polygon") {
  const SimplePolygon p(two_pockets());
  const Curve c(p, {{0.5, 0.5}, {3.5, 0.5}});
  const StreetModel model(p, c, light_options());
  const double g1 = model.cover().first_viewpoint();
  // Only positions under the left pocket see its far corners.
  CHECK(g1 <= 0.8 - 0.5 + 1e-5);
  const auto lp = model.cover().limit_point(g1);
  REQUIRE(lp.has_value());
  CHECK(*lp >= 3.2 - 0.5 - 1e-5);
  CHECK_FALSE(model.cover().limit_point(*lp).has_value());
}

TEST_CASE("subroutine properties on interval models") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + trial % 3;
    const double t_m = 0.25 + 0.25 * (trial % 4);
    const auto intervals = random_intervals(rng, 5, 10.0);
    const IntervalCover cover(intervals, 10.0);
    const auto g = cover.min_viewpoints();
    const double opt = oracle::brute_chain_intervals(intervals, m, t_m);
    bool succeeded = false;
    for (double guess = t_m; guess < 10.0 + 8 * t_m; guess *= 1.15) {
      const GuessResult r = street_subroutine(cover, g, t_m, guess, m);
      // monotone in the guess
      if (succeeded) CHECK(r.success());
      succeeded = succeeded || r.success();
      // per-path bound
      for (const auto& p : r.paths) CHECK(p.cost <= 4.0 * guess + 1e-9);
      // failure soundness
      if (!r.success()) CHECK(opt > guess);
    }
    CHECK(succeeded);
    const StreetSearch s = solve_street_intervals(cover, m, t_m, 0.01);
    CHECK(s.plan.makespan <= 4.0 * 1.01 * opt + 1e-9);
    CHECK(cover.covered_by([&] {
      std::vector<double> all;
      for (const auto& p : s.plan.paths) all.insert(all.end(), p.viewpoints.begin(), p.viewpoints.end());
      return all;
    }()));
  }
}

TEST_CASE("clustered chain defeats an equal-count split") {
  // Three viewpoints bunched at the left end and one far to the right.
  const double delta = 0.1, far = 50.0, t_m = 1.0, kappa = 10.0;
  const auto intervals = ivs({{0, 0}, {delta, delta}, {2 * delta, 2 * delta}, {far, far}});
  const IntervalCover cover(intervals, far);
  const auto g = cover.min_viewpoints();
  REQUIRE(g.size() == 4);
  // Equal-count split: {0, delta} and {2 delta, far}.
  const double naive = std::max(delta + 2 * t_m, far - 2 * delta + 2 * t_m);
  const StreetSearch s = solve_street_intervals(cover, 2, t_m, 0.01);
  const double opt = oracle::brute_chain_intervals(intervals, 2, t_m);
  CHECK(opt == doctest::Approx(2 * delta + 3 * t_m));
  CHECK(naive >= kappa * s.plan.makespan);
  CHECK(s.plan.makespan <= 4.0 * opt);
}

TEST_CASE("witness intervals: serial and parallel agree") {
  const Scene scene = make_scene(Environment::kRandomStreet, 4);
  const SimplePolygon poly(scene.polygon);
  const Curve c(poly, scene.curve);
  const auto pts = street_witness_points(poly, light_options());
  CHECK(witness_intervals(poly, c, pts) == witness_intervals_serial(poly, c, pts));
  const SimplePolygon l(fixtures::l_polygon());
  const Curve short_curve(l, {{1.9, 0.3}, {1.9, 0.9}});
  CHECK_THROWS_AS(witness_intervals(l, short_curve, std::vector<Point>{{0.1, 1.9}}), InfeasibleError);
}

TEST_CASE("U polygon street plan against the grid oracle") {
  const SimplePolygon u(fixtures::u_polygon());
  const Curve c(u, fixtures::u_curve());
  StreetOptions opt = light_options();
  opt.verify_samples = 100000;
  for (std::size_t m : {1, 2, 3}) {
    const StreetSolution sol = solve_street({u, c, m, 1.0}, opt);
    const auto ref = oracle::brute_street(u.vertices(), c.waypoints(), sol.witnesses, m, 1.0, 200);
    REQUIRE(ref.feasible);
    CHECK(sol.plan.makespan <= 4.0 * (ref.makespan + ref.gap));
    CHECK(sol.coverage >= 0.999);
    for (const auto& p : sol.plan.paths) CHECK(p.cost <= 4.0 * sol.guess + 1e-9);
    for (const auto& step : sol.trace) {
      if (!step.success) CHECK(ref.makespan + ref.gap > step.guess);
    }
  }
}

TEST_CASE("two pockets with two robots") {
  const SimplePolygon p(two_pockets());
  const Curve c(p, {{0.5, 0.5}, {3.5, 0.5}});
  const StreetSolution sol = solve_street({p, c, 2, 1.0}, light_options());
  CHECK(sol.coverage >= 0.999);
  const auto ref = oracle::brute_street(p.vertices(), c.waypoints(), sol.witnesses, 2, 1.0, 150);
  REQUIRE(ref.feasible);
  // Each pocket gets its own single-point path.
  CHECK(ref.makespan == doctest::Approx(1.0));
  CHECK(sol.plan.makespan <= 4.0 * (ref.makespan + ref.gap));
}

TEST_CASE("argument checks") {
  const IntervalCover cover(ivs({{0, 1}}), 1.0);
  CHECK_THROWS_AS(street_subroutine(cover, cover.min_viewpoints(), 1.0, 0.0, 1), DomainError);
  CHECK_THROWS_AS(solve_street_intervals(cover, 0, 1.0, 0.05), DomainError);
  CHECK_THROWS_AS(solve_street_intervals(cover, 1, 0.0, 0.05), DomainError);
  CHECK_THROWS_AS(solve_street_intervals(cover, 1, 1.0, 0.7), DomainError);
}
