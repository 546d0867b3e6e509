#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "watchroute/errors.hpp"
#include "watchroute/gtsp_reduction.hpp"
#include "watchroute/oracles.hpp"

using namespace watchroute;

TEST_CASE("containment and visibility by hand") {
  const auto l = fixtures::l_polygon();
  CHECK(oracle::inside(l, {0.5, 0.5}));
  CHECK(oracle::inside(l, {1, 1}));   // reflex vertex
  CHECK(oracle::inside(l, {2, 0.5})); // edge
  CHECK_FALSE(oracle::inside(l, {1.5, 1.5}));
  CHECK(oracle::sees(l, {1.9, 0.5}, {0.5, 1.9}) == false);
  CHECK(oracle::sees(l, {0.5, 0.5}, {1.9, 0.5}));
  CHECK(oracle::sees(l, {0, 2}, {2, 0}));  // grazes the reflex vertex
  CHECK(oracle::sees(l, {0.2, 0.2}, {0.2, 0.2}));
}

TEST_CASE("sampled intervals") {
  const auto sq = fixtures::unit_square();
  const std::vector<Point> curve{{0.1, 0.5}, {0.9, 0.5}};
  const auto whole = oracle::sampled_interval(sq, curve, {0.5, 0.9}, 100, 7);
  REQUIRE(whole);
  CHECK(whole->target_id == 7);
  CHECK(whole->s_left == 0.0);
  CHECK(whole->s_right == doctest::Approx(0.8));

  // The U polygon's tower corner (1,2) is seen from the curve only up to x = 1.
  const auto u = fixtures::u_polygon();
  const auto part = oracle::sampled_interval(u, fixtures::u_curve(), {0.9, 1.9}, 400);
  REQUIRE(part);
  CHECK(part->s_left == 0.0);
  const double stop = 0.9 + 0.1 * 1.4 / 0.9;  // line from (0.9,1.9) through (1,1)
  CHECK(part->s_right == doctest::Approx(stop - 0.5).epsilon(1e-6));

  const std::vector<Point> far{{2.5, 0.5}, {2.9, 0.5}};
  CHECK_FALSE(oracle::sampled_interval(u, far, {0.5, 1.9}, 100));
}

TEST_CASE("brute chain by hand") {
  const std::vector<CurveInterval> one{{0, 2, 5}};
  CHECK(oracle::brute_chain_intervals(one, 1, 1.0) == 1.0);
  const std::vector<CurveInterval> two{{0, 0, 1}, {1, 3, 4}};
  CHECK(oracle::brute_chain_intervals(two, 1, 1.0) == doctest::Approx(4.0));
  CHECK(oracle::brute_chain_intervals(two, 2, 1.0) == doctest::Approx(1.0));
  CHECK(oracle::brute_chain_intervals({}, 2, 1.0) == 0.0);
}

TEST_CASE("serial and parallel oracles agree") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.0, 10.0), width(0.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<CurveInterval> iv;
    const std::size_t k = 1 + trial % 6;
    for (std::size_t i = 0; i < k; ++i) {
      const double a = pos(rng);
      iv.push_back({i, a, a + width(rng)});
    }
    const std::size_t m = 1 + trial % 3;
    CHECK(oracle::brute_chain_intervals(iv, m, 0.5) == oracle::brute_chain_intervals_serial(iv, m, 0.5));
  }

  const auto u = fixtures::u_polygon();
  const std::vector<Point> wit{{0.5, 1.9}, {2.5, 1.9}, {1.5, 0.1}, {0.1, 1.0}};
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto a = oracle::brute_street(u, fixtures::u_curve(), wit, m, 1.0, 200);
    const auto b = oracle::brute_street_serial(u, fixtures::u_curve(), wit, m, 1.0, 200);
    CHECK(a.feasible == b.feasible);
    CHECK(a.makespan == b.makespan);
    CHECK(a.gap == b.gap);
  }
}

TEST_CASE("brute street") {
  const auto sq = fixtures::unit_square();
  const std::vector<Point> curve{{0.1, 0.5}, {0.9, 0.5}};
  const std::vector<Point> wit{{0, 0}, {1, 1}, {0.3, 0.7}};
  const auto r = oracle::brute_street(sq, curve, wit, 2, 0.25, 50);
  CHECK(r.feasible);
  CHECK(r.makespan == doctest::Approx(0.25));
  CHECK(r.gap == doctest::Approx(0.8 / 49 + 0.25));

  // A tower is seen from x <= 23/18 (resp. x >= 31/18), so one robot walks
  // 8/18 and takes two views.
  const auto u = fixtures::u_polygon();
  const std::vector<Point> towers = fixtures::u_towers();
  const auto one = oracle::brute_street(u, fixtures::u_curve(), towers, 1, 1.0, 400);
  CHECK(one.feasible);
  CHECK(one.makespan == doctest::Approx(8.0 / 18 + 2.0).epsilon(0.01));
  const auto two = oracle::brute_street(u, fixtures::u_curve(), towers, 2, 1.0, 400);
  CHECK(two.makespan == doctest::Approx(1.0));

  const std::vector<Point> blind{{2.5, 0.5}, {2.9, 0.5}};
  CHECK_FALSE(oracle::brute_street(u, blind, towers, 1, 1.0, 50).feasible);
}

TEST_CASE("geodesic oracle") {
  const auto l = fixtures::l_polygon();
  CHECK(oracle::brute_geodesic(l, {1.9, 0.5}, {0.5, 1.9}) == doctest::Approx(2 * std::sqrt(1.06)));
  CHECK(oracle::brute_geodesic(l, {0.2, 0.2}, {0.8, 0.6}) == doctest::Approx(std::hypot(0.6, 0.4)));
  const auto u = fixtures::u_polygon();
  CHECK(oracle::brute_geodesic(u, {0.5, 1.9}, {2.5, 1.9}) ==
        doctest::Approx(2 * std::hypot(0.5, 0.9) + 1.0));
}

TEST_CASE("raycast") {
  const auto sq = fixtures::unit_square();
  const auto rays = oracle::raycast_vp(sq, {0.5, 0.5}, 64, 3);
  REQUIRE(rays.size() == 64);
  for (const auto& r : rays) {
    CHECK(norm(r.direction) == doctest::Approx(1.0));
    const double expect = 0.5 / std::max(std::abs(r.direction.x), std::abs(r.direction.y));
    CHECK(r.distance == doctest::Approx(expect));
  }
  const auto again = oracle::raycast_vp(sq, {0.5, 0.5}, 64, 3);
  CHECK(again[10].distance == rays[10].distance);
}

TEST_CASE("brute gtsp") {
  const SimplePolygon sq(fixtures::unit_square());
  const std::vector<Point> views{{0.2, 0.2}, {0.8, 0.8}};
  const std::vector<Point> targets{{0.5, 0.5}, {0.3, 0.3}};
  const GtspInstance g = build_gtsp(sq, views, targets, {DepotKind::kSameDepot, {{0.1, 0.1}}}, 2);
  CHECK(oracle::brute_gtsp(g) == doctest::Approx(2 * std::sqrt(0.02)));
  const GtspInstance none = build_gtsp(sq, views, std::vector<Point>{}, {DepotKind::kSameDepot, {{0.1, 0.1}}}, 1);
  CHECK(oracle::brute_gtsp(none) == 0.0);
}

TEST_CASE("oracle capacity limits") {
  std::vector<CurveInterval> seven;
  for (std::size_t i = 0; i < 7; ++i) seven.push_back({i, double(i), double(i) + 0.5});
  CHECK_THROWS_AS(oracle::brute_chain_intervals(seven, 1, 1.0), CapacityError);
  CHECK_THROWS_AS(oracle::brute_chain_intervals(std::span<const CurveInterval>(seven.data(), 1), 4, 1.0), CapacityError);
  const auto u = fixtures::u_polygon();
  CHECK_THROWS_AS(oracle::brute_street(u, fixtures::u_curve(), fixtures::u_towers(), 1, 1.0, 401),
                  CapacityError);
  const SimplePolygon sq(fixtures::unit_square());
  std::vector<Point> nine;
  for (int i = 0; i < 9; ++i) nine.push_back({0.1 + 0.1 * i, 0.5});
  const GtspInstance g = build_gtsp(sq, nine, nine, {DepotKind::kSameDepot, {{0.5, 0.5}}}, 1);
  CHECK_THROWS_AS(oracle::brute_gtsp(g), CapacityError);
}
