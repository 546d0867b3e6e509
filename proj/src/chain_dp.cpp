#include "watchroute/chain_dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "watchroute/errors.hpp"

namespace watchroute {

namespace {

// Arc positions closer than this are the same candidate point.
constexpr double kArcTol = 1e-12;

std::vector<double> sorted_distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > kArcTol) out.push_back(x);
  }
  return out;
}

bool stabs(const CurveInterval& iv, double s) {
  return s >= iv.s_left - kArcTol && s <= iv.s_right + kArcTol;
}

}  // namespace

double path_cost(double s_start, double s_end, std::size_t viewpoint_count, double t_m) {
  return (s_end - s_start) + static_cast<double>(viewpoint_count) * t_m;
}

EndpointSets candidate_endpoints(std::span<const CurveInterval> intervals) {
  EndpointSets out;
  for (const CurveInterval& iv : intervals) {
    out.right.push_back(iv.s_right);
    out.left.push_back(iv.s_left);
  }
  out.right = sorted_distinct(std::move(out.right));
  out.left = sorted_distinct(std::move(out.left));
  return out;
}

SinglePathResult optimal_single_path(double i, double j, std::span<const CurveInterval> intervals,
                                     double t_m) {
  if (j < i) throw DomainError("optimal_single_path: path end precedes its start");
  std::vector<const CurveInterval*> uncovered;
  for (const CurveInterval& iv : intervals) {
    if (iv.s_right < i - kArcTol || iv.s_left > j + kArcTol) {
      throw DomainError("optimal_single_path: interval of target " +
                        std::to_string(iv.target_id) + " misses the path");
    }
    if (!stabs(iv, i) && !stabs(iv, j)) uncovered.push_back(&iv);
  }
  SinglePathResult out;
  out.viewpoints.push_back(i);
  std::sort(uncovered.begin(), uncovered.end(),
            [](const CurveInterval* a, const CurveInterval* b) { return a->s_right < b->s_right; });
  // Every remaining interval lies strictly inside (i, j); the earliest right
  // endpoint is the next forced viewpoint.
  double last = -std::numeric_limits<double>::infinity();
  for (const CurveInterval* iv : uncovered) {
    if (stabs(*iv, last)) continue;
    last = iv->s_right;
    out.viewpoints.push_back(last);
  }
  if (j - out.viewpoints.back() > kArcTol) out.viewpoints.push_back(j);
  out.cost = path_cost(i, j, out.viewpoints.size(), t_m);
  return out;
}

bool blocking_indicator(std::span<const CurveInterval> intervals, double j_prev, double i) {
  return std::any_of(intervals.begin(), intervals.end(), [&](const CurveInterval& iv) {
    return j_prev < iv.s_left - kArcTol && iv.s_right < i - kArcTol;
  });
}

std::vector<CurveInterval> target_intervals(const ChainInstance& instance) {
  const ChainVisibilityReport report =
      check_chain_visibility(instance.polygon, instance.curve, instance.targets);
  if (const auto bad = report.violated(); !bad.empty()) {
    throw DomainError("chain visibility violated for target " + std::to_string(bad.front()));
  }
  if (const auto unseen = report.empty(); !unseen.empty()) {
    throw InfeasibleError("target " + std::to_string(unseen.front()) + " is not visible from the curve",
                          unseen);
  }
  std::vector<CurveInterval> out;
  for (const auto& entry : report.targets) out.push_back(entry.visibility.interval());
  return out;
}

RoutePlan solve_chain_intervals(std::span<const CurveInterval> intervals, std::size_t m,
                                double t_m) {
  if (m == 0) throw DomainError("solve_chain: m must be positive");
  if (!(t_m >= 0.0) || !std::isfinite(t_m)) throw DomainError("solve_chain: t_m must be >= 0");

  RoutePlan plan;
  plan.paths.resize(m);
  if (intervals.empty()) return plan;

  // Candidate starts and ends: R u L, so single-point paths are expressible.
  std::vector<double> pos;
  for (const CurveInterval& iv : intervals) {
    pos.push_back(iv.s_left);
    pos.push_back(iv.s_right);
  }
  pos = sorted_distinct(std::move(pos));
  const std::size_t n = pos.size();

  // Path cost for every (start, end) pair.
  std::vector<double> single(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      std::vector<CurveInterval> touching;
      for (const CurveInterval& iv : intervals) {
        if (iv.s_right >= pos[a] - kArcTol && iv.s_left <= pos[b] + kArcTol) touching.push_back(iv);
      }
      single[a * n + b] = optimal_single_path(pos[a], pos[b], touching, t_m).cost;
    }
  }

  // nothing_before[a]: no interval ends before pos[a] (first path may start there).
  // nothing_after[b]: no interval starts after pos[b] (last path may end there).
  std::vector<bool> nothing_before(n), nothing_after(n);
  for (std::size_t a = 0; a < n; ++a) {
    nothing_before[a] = std::none_of(intervals.begin(), intervals.end(), [&](const CurveInterval& iv) {
      return iv.s_right < pos[a] - kArcTol;
    });
    nothing_after[a] = std::none_of(intervals.begin(), intervals.end(), [&](const CurveInterval& iv) {
      return iv.s_left > pos[a] + kArcTol;
    });
  }
  std::vector<bool> blocked(n * n, false);  // [b_prev * n + a]
  for (std::size_t bp = 0; bp < n; ++bp) {
    for (std::size_t a = bp + 1; a < n; ++a) {
      blocked[bp * n + a] = blocking_indicator(intervals, pos[bp], pos[a]);
    }
  }

  // table[k][a*n+b]: best makespan of k+1 paths whose last path is [pos[a], pos[b]]
  // and which cover every interval starting at or before pos[b].
  using Cell = std::optional<double>;
  struct Back {
    std::size_t a = 0, b = 0;
  };
  std::vector<std::vector<Cell>> table(m, std::vector<Cell>(n * n));
  std::vector<std::vector<Back>> back(m, std::vector<Back>(n * n));

  for (std::size_t a = 0; a < n; ++a) {
    if (!nothing_before[a]) continue;
    for (std::size_t b = a; b < n; ++b) table[0][a * n + b] = single[a * n + b];
  }
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t a = 1; a < n; ++a) {
      // Best predecessor depends only on where this path starts.
      Cell best;
      Back arg;
      for (std::size_t ap = 0; ap < a; ++ap) {
        for (std::size_t bp = ap; bp < a; ++bp) {
          const Cell& prev = table[k - 1][ap * n + bp];
          if (!prev || blocked[bp * n + a]) continue;
          if (!best || *prev < *best) {
            best = prev;
            arg = {ap, bp};
          }
        }
      }
      if (!best) continue;
      for (std::size_t b = a; b < n; ++b) {
        table[k][a * n + b] = std::max(*best, single[a * n + b]);
        back[k][a * n + b] = arg;
      }
    }
  }

  Cell best;
  std::size_t best_k = 0, best_a = 0, best_b = 0;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        const Cell& c = table[k][a * n + b];
        if (!c || !nothing_after[b]) continue;
        if (!best || *c < *best) {
          best = c;
          std::tie(best_k, best_a, best_b) = std::tuple{k, a, b};
        }
      }
    }
  }
  if (!best) throw InfeasibleError("solve_chain: no feasible plan");

  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (std::size_t k = best_k + 1, a = best_a, b = best_b; k-- > 0;) {
    spans.emplace_back(a, b);
    const Back bk = back[k][a * n + b];
    a = bk.a;
    b = bk.b;
  }
  std::reverse(spans.begin(), spans.end());

  for (std::size_t t = 0; t < spans.size(); ++t) {
    const auto [a, b] = spans[t];
    // Intervals not already stabbed by an earlier path's end.
    const double prev_end = t == 0 ? -std::numeric_limits<double>::infinity() : pos[spans[t - 1].second];
    std::vector<CurveInterval> own;
    for (const CurveInterval& iv : intervals) {
      if (iv.s_left > prev_end + kArcTol && iv.s_left <= pos[b] + kArcTol) own.push_back(iv);
    }
    const SinglePathResult r = optimal_single_path(pos[a], pos[b], own, t_m);
    PathOnCurve& path = plan.paths[t];
    path.s_start = pos[a];
    path.s_end = pos[b];
    path.viewpoints = r.viewpoints;
    path.cost = r.cost;
  }
  plan.makespan = 0.0;
  for (const PathOnCurve& p : plan.paths) plan.makespan = std::max(plan.makespan, p.cost);
  return plan;
}

RoutePlan solve_chain(const ChainInstance& instance) {
  const std::vector<CurveInterval> intervals = target_intervals(instance);
  return solve_chain_intervals(intervals, instance.m, instance.t_m);
}

}  // namespace watchroute
