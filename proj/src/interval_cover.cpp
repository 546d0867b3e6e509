#include <algorithm>
#include <cmath>

#include "watchroute/errors.hpp"
#include "watchroute/log.hpp"
#include "watchroute/street_approx.hpp"

namespace watchroute {

IntervalCover::IntervalCover(std::vector<CurveInterval> intervals, double curve_length, double eps)
    : intervals_(std::move(intervals)), length_(curve_length), eps_(eps) {
  std::vector<CurveInterval> sorted = intervals_;
  // By right endpoint, wider first on ties so the narrower one survives.
  std::sort(sorted.begin(), sorted.end(), [](const CurveInterval& a, const CurveInterval& b) {
    if (a.s_right != b.s_right) return a.s_right < b.s_right;
    return a.s_left < b.s_left;
  });
  for (const CurveInterval& iv : sorted) {
    // Drop iv if it contains the last kept interval.
    if (!minimal_.empty() && iv.s_left <= minimal_.back().s_left + eps_) continue;
    while (!minimal_.empty() && minimal_.back().s_right >= iv.s_right - eps_ &&
           minimal_.back().s_left <= iv.s_left) {
      minimal_.pop_back();
    }
    minimal_.push_back(iv);
  }
}

double IntervalCover::first_viewpoint() const {
  if (minimal_.empty()) return length_;
  return minimal_.front().s_right;
}

std::optional<double> IntervalCover::limit_point(double p) const {
  // minimal_ has increasing left endpoints, so the first one past p wins.
  const auto it = std::upper_bound(
      minimal_.begin(), minimal_.end(), p + eps_,
      [](double v, const CurveInterval& iv) { return v < iv.s_left; });
  if (it == minimal_.end()) return std::nullopt;
  return it->s_right;
}

std::vector<double> IntervalCover::min_viewpoints() const {
  std::vector<double> out;
  if (minimal_.empty()) return out;
  std::optional<double> g = first_viewpoint();
  while (g) {
    out.push_back(*g);
    g = limit_point(*g);
  }
  return out;
}

std::vector<std::size_t> IntervalCover::uncovered(std::span<const double> viewpoints) const {
  std::vector<double> v(viewpoints.begin(), viewpoints.end());
  std::sort(v.begin(), v.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const CurveInterval& iv = intervals_[i];
    const auto it = std::lower_bound(v.begin(), v.end(), iv.s_left - eps_);
    if (it == v.end() || *it > iv.s_right + eps_) out.push_back(i);
  }
  return out;
}

bool IntervalCover::covered_by(std::span<const double> viewpoints) const {
  return uncovered(viewpoints).empty();
}

GuessResult street_subroutine(const IntervalCover& cover, std::span<const double> g_star,
                              double t_m, double guess, std::size_t m) {
  if (!(guess > 0.0)) throw DomainError("street_subroutine: guess must be positive");
  const double eps = cover.eps();
  const double length = cover.curve_length();
  const double per_path = t_m > 0.0 ? guess / t_m : std::numeric_limits<double>::infinity();
  const std::size_t cap =
      std::isfinite(per_path) ? static_cast<std::size_t>(std::ceil(per_path - 1e-12)) : g_star.size();

  GuessResult out;
  std::vector<double> all;
  std::optional<double> l = cover.first_viewpoint();
  for (std::size_t i = 0; i < m && l; ++i) {
    double r = std::min(*l + guess, length);
    std::vector<double> inner;
    for (double g : g_star) {
      if (g > *l + eps && g < r - eps) inner.push_back(g);
    }
    if (static_cast<double>(inner.size()) > per_path) {
      inner.resize(cap);
      r = inner.back();
      inner.pop_back();
    }
    PathOnCurve path;
    path.s_start = *l;
    path.s_end = r;
    path.viewpoints.push_back(*l);
    path.viewpoints.insert(path.viewpoints.end(), inner.begin(), inner.end());
    if (r - *l > eps) path.viewpoints.push_back(r);
    path.cost = path_cost(path.s_start, path.s_end, path.viewpoints.size(), t_m);
    all.insert(all.end(), path.viewpoints.begin(), path.viewpoints.end());
    out.paths.push_back(std::move(path));
    l = cover.limit_point(r);
  }
  out.status = cover.covered_by(all) ? GuessStatus::kSuccess : GuessStatus::kFailure;
  while (out.paths.size() < m) out.paths.push_back({});
  return out;
}

StreetSearch solve_street_intervals(const IntervalCover& cover, std::size_t m, double t_m,
                                    double rel_tol) {
  if (m == 0) throw DomainError("solve_street: m must be positive");
  if (!(t_m > 0.0) || !std::isfinite(t_m)) throw DomainError("solve_street: t_m must be positive");
  if (!(rel_tol > 0.0 && rel_tol < 0.5)) throw DomainError("solve_street: rel_tol must be in (0, 0.5)");

  StreetSearch out;
  out.g_star = cover.min_viewpoints();
  auto attempt = [&](double guess) {
    GuessResult r = street_subroutine(cover, out.g_star, t_m, guess, m);
    out.trace.push_back({guess, r.success()});
    log::debug("street guess {:.9g}: {}", guess, r.success() ? "success" : "failure");
    return r;
  };

  double lo = t_m;
  double hi = cover.curve_length() + static_cast<double>(out.g_star.size() + 2) * t_m;
  GuessResult best = attempt(lo);
  if (best.success()) {
    hi = lo;
  } else {
    best = attempt(hi);
    if (!best.success()) {
      throw InfeasibleError("solve_street: upper-bound guess failed; witnesses not coverable");
    }
    while (hi - lo > rel_tol * lo) {
      const double mid = 0.5 * (lo + hi);
      GuessResult r = attempt(mid);
      if (r.success()) {
        hi = mid;
        best = std::move(r);
      } else {
        lo = mid;
      }
    }
  }
  out.guess = hi;
  out.plan.paths = std::move(best.paths);
  for (const PathOnCurve& p : out.plan.paths) out.plan.makespan = std::max(out.plan.makespan, p.cost);
  return out;
}

}  // namespace watchroute
