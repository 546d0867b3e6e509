#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "watchroute/chain_dp.hpp"
#include "watchroute/errors.hpp"
#include "watchroute/oracles.hpp"

using namespace watchroute;

namespace {

std::vector<CurveInterval> ivs(std::initializer_list<std::pair<double, double>> list) {
  std::vector<CurveInterval> out;
  for (auto [l, r] : list) out.push_back({out.size(), l, r});
  return out;
}

std::vector<CurveInterval> random_intervals(std::mt19937_64& rng, std::size_t n, double length) {
  std::uniform_real_distribution<double> pos(0.0, length);
  std::uniform_real_distribution<double> width(0.0, 0.3 * length);
  std::vector<CurveInterval> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = pos(rng);
    out.push_back({i, l, std::min(length, l + width(rng))});
  }
  return out;
}

ChainInstance u_instance(std::size_t m, double t_m) {
  const SimplePolygon poly(fixtures::u_polygon());
  Curve curve(poly, fixtures::u_curve());
  return {poly, std::move(curve), fixtures::u_towers(), m, t_m};
}

bool covered(const RoutePlan& plan, const std::vector<CurveInterval>& intervals) {
  return std::all_of(intervals.begin(), intervals.end(), [&](const CurveInterval& iv) {
    return std::any_of(plan.paths.begin(), plan.paths.end(), [&](const PathOnCurve& p) {
      return std::any_of(p.viewpoints.begin(), p.viewpoints.end(),
                         [&](double s) { return iv.contains(s, 1e-9); });
    });
  });
}

}  // namespace

TEST_CASE("candidate endpoints") {
  auto e = candidate_endpoints(ivs({{0, 1}, {2, 3}}));
  CHECK(e.right == std::vector<double>{1, 3});
  CHECK(e.left == std::vector<double>{0, 2});
  e = candidate_endpoints(ivs({{2, 5}}));
  CHECK(e.right == std::vector<double>{5});
  CHECK(e.left == std::vector<double>{2});
  e = candidate_endpoints(ivs({{0, 4}, {1, 3}}));
  CHECK(e.right == std::vector<double>{3, 4});
  CHECK(e.left == std::vector<double>{0, 1});
  e = candidate_endpoints(ivs({{0, 4}, {0, 4}}));
  CHECK(e.right.size() == 1);
}

TEST_CASE("optimal single path") {
  auto r = optimal_single_path(1, 2, ivs({{0, 1}, {2, 3}}), 1.0);
  CHECK(r.viewpoints == std::vector<double>{1, 2});
  CHECK(r.cost == doctest::Approx(3.0));

  r = optimal_single_path(1, 1, ivs({{0, 1}}), 1.0);
  CHECK(r.viewpoints == std::vector<double>{1});
  CHECK(r.cost == doctest::Approx(1.0));

  // [0,1] already contains the forced start 0, so four viewpoints suffice.
  r = optimal_single_path(0, 6, ivs({{0, 1}, {2, 3}, {4, 5}}), 0.5);
  CHECK(r.viewpoints == std::vector<double>{0, 3, 5, 6});
  CHECK(r.cost == doctest::Approx(8.0));

  CHECK_THROWS_AS(optimal_single_path(0, 1, ivs({{2, 3}}), 1.0), DomainError);
  CHECK_THROWS_AS(optimal_single_path(2, 1, ivs({{1, 2}}), 1.0), DomainError);
}

TEST_CASE("optimal single path is minimal") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto intervals = random_intervals(rng, 5, 10.0);
    double i = 10, j = 0;
    for (const auto& iv : intervals) {
      i = std::min(i, iv.s_right);
      j = std::max(j, iv.s_left);
    }
    if (i > j) std::swap(i, j);
    const auto r = optimal_single_path(i, j, intervals, 1.0);
    // Every stabbing set may use interval endpoints; enumerate subsets of them.
    std::vector<double> cand{i, j};
    for (const auto& iv : intervals) {
      if (iv.s_left >= i && iv.s_left <= j) cand.push_back(iv.s_left);
      if (iv.s_right >= i && iv.s_right <= j) cand.push_back(iv.s_right);
    }
    std::size_t best = cand.size() + 2;
    for (std::uint32_t mask = 0; mask < (1u << cand.size()); ++mask) {
      std::vector<double> pts{i, j};
      for (std::size_t k = 0; k < cand.size(); ++k) {
        if (mask >> k & 1) pts.push_back(cand[k]);
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      const bool ok = std::all_of(intervals.begin(), intervals.end(), [&](const CurveInterval& iv) {
        return std::any_of(pts.begin(), pts.end(), [&](double s) { return iv.contains(s); });
      });
      if (ok) best = std::min(best, pts.size());
    }
    CHECK(r.viewpoints.size() == best);
  }
}

TEST_CASE("blocking indicator") {
  CHECK(blocking_indicator(ivs({{2, 3}}), 1, 4));
  CHECK_FALSE(blocking_indicator(ivs({{2, 3}}), 2, 3));
  CHECK_FALSE(blocking_indicator(ivs({{0, 5}}), 1, 4));
}

TEST_CASE("U-polygon chain values") {
  const RoutePlan two = solve_chain(u_instance(2, 1.0));
  CHECK(two.makespan == doctest::Approx(1.0));
  REQUIRE(two.paths.size() == 2);
  for (const auto& p : two.paths) CHECK(p.viewpoints.size() == 1);
  CHECK(oracle::brute_chain(u_instance(2, 1.0)) == doctest::Approx(1.0));

  const RoutePlan one = solve_chain(u_instance(1, 1.0));
  CHECK(one.makespan == doctest::Approx(8.0 / 18.0 + 2.0).epsilon(1e-12));
  REQUIRE(one.paths.size() == 1);
  CHECK(one.paths[0].s_start == doctest::Approx(14.0 / 18.0));
  CHECK(one.paths[0].s_end == doctest::Approx(22.0 / 18.0));
  CHECK(oracle::brute_chain(u_instance(1, 1.0)) == doctest::Approx(8.0 / 18.0 + 2.0));
}

TEST_CASE("enough robots and free measurements cost nothing") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto intervals = random_intervals(rng, 4, 5.0);
    const RoutePlan plan = solve_chain_intervals(intervals, 4, 0.0);
    CHECK(plan.makespan == 0.0);
    CHECK(plan.paths.size() == 4);
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(solve_chain_intervals(ivs({{0, 1}}), 0, 1.0), DomainError);
  CHECK_THROWS_AS(solve_chain_intervals(ivs({{0, 1}}), 1, -1.0), DomainError);
  const SimplePolygon l(fixtures::l_polygon());
  ChainInstance zig{l, Curve(l, {{0.5, 1.9}, {0.5, 0.5}, {1.9, 0.5}, {0.5, 0.5}}), {{0.5, 1.9}}, 1, 1.0};
  CHECK_THROWS_AS(solve_chain(zig), DomainError);
  ChainInstance hidden{l, Curve(l, {{1.9, 0.3}, {1.9, 0.9}}), {{0.1, 1.9}}, 1, 1.0};
  CHECK_THROWS_AS(solve_chain(hidden), InfeasibleError);
}

TEST_CASE("matches the brute-force oracle on random intervals") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const std::size_t m = 1 + trial % 3;
    const double t_m = (trial % 3) * 0.5;
    const auto intervals = random_intervals(rng, n, 10.0);
    const RoutePlan plan = solve_chain_intervals(intervals, m, t_m);
    CHECK(plan.makespan == doctest::Approx(oracle::brute_chain_intervals(intervals, m, t_m)).epsilon(1e-12));
    CHECK(covered(plan, intervals));
    double worst = 0.0;
    for (const auto& p : plan.paths) {
      if (p.idle()) continue;
      CHECK(p.cost == doctest::Approx(path_cost(p.s_start, p.s_end, p.viewpoints.size(), t_m)));
      worst = std::max(worst, p.cost);
    }
    CHECK(worst == doctest::Approx(plan.makespan));
  }
}

TEST_CASE("path ends sit on interval endpoints and off-grid ends do not help") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto intervals = random_intervals(rng, 4, 4.0);
    const RoutePlan plan = solve_chain_intervals(intervals, 1, 0.5);
    const auto e = candidate_endpoints(intervals);
    std::vector<double> all = e.right;
    all.insert(all.end(), e.left.begin(), e.left.end());
    auto on = [&](double s) {
      return std::any_of(all.begin(), all.end(), [&](double c) { return std::abs(c - s) < 1e-12; });
    };
    for (const auto& p : plan.paths) {
      if (p.idle()) continue;
      CHECK(on(p.s_start));
      CHECK(on(p.s_end));
    }
    double best = 1e300;
    for (double i = 0; i <= 4.0; i += 0.05) {
      for (double j = i; j <= 4.0; j += 0.05) {
        const bool reach = std::all_of(intervals.begin(), intervals.end(), [&](const CurveInterval& iv) {
          return iv.s_right >= i && iv.s_left <= j;
        });
        if (reach) best = std::min(best, optimal_single_path(i, j, intervals, 0.5).cost);
      }
    }
    CHECK(plan.makespan <= best + 1e-9);
  }
}

TEST_CASE("monotone in robots and targets") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto intervals = random_intervals(rng, 6, 8.0);
    double prev = 1e300;
    for (std::size_t m = 1; m <= 4; ++m) {
      const double v = solve_chain_intervals(intervals, m, 1.0).makespan;
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
    prev = 0.0;
    for (std::size_t n = 1; n <= intervals.size(); ++n) {
      const std::vector<CurveInterval> prefix(intervals.begin(), intervals.begin() + static_cast<long>(n));
      const double v = solve_chain_intervals(prefix, 2, 1.0).makespan;
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}
