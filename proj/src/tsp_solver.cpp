#include "watchroute/tsp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "watchroute/errors.hpp"

namespace watchroute {

bool AtspInstance::symmetric() const {
  for (std::size_t i = 0; i < n(); ++i) {
    for (std::size_t j = i + 1; j < n(); ++j) {
      if (cost[i][j] != cost[j][i]) return false;
    }
  }
  return true;
}

void validate(const AtspInstance& inst) {
  const std::size_t n = inst.n();
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.cost[i].size() != n) throw DomainError("cost matrix is not square");
    if (inst.cost[i][i] != 0.0) throw DomainError("cost matrix diagonal must be zero");
    for (double c : inst.cost[i]) {
      if (std::isnan(c) || c < 0.0) throw DomainError("cost matrix has a negative or NaN entry");
    }
  }
}

double tour_cost(const AtspInstance& inst, std::span<const std::size_t> order) {
  double total = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    total += inst.cost[order[k]][order[(k + 1) % order.size()]];
  }
  return total;
}

Tour held_karp(const AtspInstance& inst, std::size_t cap) {
  validate(inst);
  const std::size_t n = inst.n();
  if (n > cap) {
    throw CapacityError("held_karp: " + std::to_string(n) + " nodes exceeds the cap of " +
                        std::to_string(cap) + "; use branch_and_bound");
  }
  if (n == 0) return {};
  if (n == 1) return {{0}, 0.0};

  // Node 0 is fixed as the start; masks range over nodes 1..n-1.
  const std::size_t k = n - 1;
  const std::size_t full = std::size_t{1} << k;
  std::vector<double> dp(full * k, kForbidden);
  std::vector<std::uint8_t> parent(full * k, 0);
  for (std::size_t j = 0; j < k; ++j) dp[(std::size_t{1} << j) * k + j] = inst.cost[0][j + 1];
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const double here = dp[mask * k + j];
      if (here == kForbidden) continue;
      for (std::size_t t = 0; t < k; ++t) {
        if (mask & (std::size_t{1} << t)) continue;
        const double c = here + inst.cost[j + 1][t + 1];
        const std::size_t next = (mask | (std::size_t{1} << t)) * k + t;
        if (c < dp[next]) {
          dp[next] = c;
          parent[next] = static_cast<std::uint8_t>(j);
        }
      }
    }
  }
  double best = kForbidden;
  std::size_t last = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const double c = dp[(full - 1) * k + j] + inst.cost[j + 1][0];
    if (c < best) {
      best = c;
      last = j;
    }
  }
  if (best == kForbidden) throw InfeasibleError("held_karp: no finite tour exists");

  Tour tour;
  tour.cost = best;
  std::size_t mask = full - 1;
  for (std::size_t j = last;;) {
    tour.order.push_back(j + 1);
    const std::size_t prev_mask = mask & ~(std::size_t{1} << j);
    if (prev_mask == 0) break;
    const std::size_t p = parent[mask * k + j];
    mask = prev_mask;
    j = p;
  }
  tour.order.push_back(0);
  std::reverse(tour.order.begin(), tour.order.end());
  return tour;
}

Assignment solve_assignment(const std::vector<std::vector<double>>& cost) {
  // Shortest augmenting path with potentials; 1-based internally.
  const std::size_t n = cost.size();
  double finite_max = 0.0;
  for (const auto& row : cost) {
    for (double c : row) {
      if (c != kForbidden) finite_max = std::max(finite_max, std::abs(c));
    }
  }
  // Any assignment using a forbidden entry costs at least `big`.
  const double big = 2.0 * (static_cast<double>(n) * finite_max + 1.0);
  auto at = [&](std::size_t i, std::size_t j) {
    const double c = cost[i - 1][j - 1];
    return c == kForbidden ? big : c;
  };
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kForbidden);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kForbidden;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = at(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Assignment out;
  out.col_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) out.col_of_row[p[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = cost[i][out.col_of_row[i]];
    if (c == kForbidden) {
      out.cost = kForbidden;
      break;
    }
    out.cost += c;
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Arc {
  std::size_t from, to;
};

class BranchAndBound {
 public:
  BranchAndBound(const AtspInstance& inst, const BnbOptions& options)
      : inst_(inst), deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                  std::chrono::duration<double>(options.time_budget_s))) {}

  BnbResult run() {
    const std::size_t n = inst_.n();
    BnbResult out;
    if (n <= 1) {
      out.tour = {n == 1 ? std::vector<std::size_t>{0} : std::vector<std::size_t>{}, 0.0};
      out.optimal = true;
      return out;
    }
    std::vector<std::vector<double>> base = inst_.cost;
    for (std::size_t i = 0; i < n; ++i) base[i][i] = kForbidden;
    Node root{std::move(base), {}};
    root.assignment = solve_assignment(root.cost);
    root_bound_ = root.assignment.cost;
    explore(root);
    out.nodes = nodes_;
    out.optimal = !timed_out_;
    out.lower_bound = timed_out_ ? std::min(root_bound_, best_.cost) : best_.cost;
    if (best_.order.empty() && !timed_out_) {
      throw InfeasibleError("branch_and_bound: no finite tour exists");
    }
    out.tour = best_;
    return out;
  }

 private:
  struct Node {
    std::vector<std::vector<double>> cost;
    Assignment assignment;
  };

  static std::vector<std::vector<std::size_t>> cycles(const std::vector<std::size_t>& succ) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<char> seen(succ.size(), 0);
    for (std::size_t s = 0; s < succ.size(); ++s) {
      if (seen[s]) continue;
      std::vector<std::size_t> cyc;
      for (std::size_t v = s; !seen[v]; v = succ[v]) {
        seen[v] = 1;
        cyc.push_back(v);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  void explore(Node& node) {
    ++nodes_;
    if (timed_out_) return;
    if ((nodes_ & 63) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    if (node.assignment.cost == kForbidden || !better(node.assignment.cost)) return;
    const auto cyc = cycles(node.assignment.col_of_row);
    if (cyc.size() == 1) {
      best_.order = cyc.front();
      best_.cost = tour_cost(inst_, best_.order);
      return;
    }
    // Branch on the subtour with the fewest free arcs.
    const std::vector<std::size_t>* pick = nullptr;
    std::size_t pick_free = 0;
    for (const auto& c : cyc) {
      std::size_t free = 0;
      for (std::size_t v : c) free += !forced(node, v);
      if (!pick || free < pick_free) {
        pick = &c;
        pick_free = free;
      }
    }
    std::vector<Arc> arcs;
    for (std::size_t k = 0; k < pick->size(); ++k) {
      const std::size_t v = (*pick)[k];
      if (!forced(node, v)) arcs.push_back({v, node.assignment.col_of_row[v]});
    }
    // Child t excludes arc t and fixes arcs 0..t-1.
    std::vector<Node> children;
    std::vector<std::vector<double>> cost = node.cost;
    for (const Arc& a : arcs) {
      Node child{cost, {}};
      child.cost[a.from][a.to] = kForbidden;
      child.assignment = solve_assignment(child.cost);
      if (child.assignment.cost != kForbidden && better(child.assignment.cost)) {
        children.push_back(std::move(child));
      }
      fix(cost, a);
    }
    std::stable_sort(children.begin(), children.end(), [](const Node& x, const Node& y) {
      return x.assignment.cost < y.assignment.cost;
    });
    for (Node& child : children) explore(child);
  }

  bool better(double bound) const {
    if (best_.order.empty()) return true;
    return bound < best_.cost - 1e-9 * (1.0 + std::abs(best_.cost));
  }

  /// Row v has a single allowed column, so its arc is fixed.
  static bool forced(const Node& node, std::size_t v) {
    std::size_t allowed = 0;
    for (double c : node.cost[v]) allowed += c != kForbidden;
    return allowed == 1;
  }

  static void fix(std::vector<std::vector<double>>& cost, const Arc& a) {
    const std::size_t n = cost.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != a.to) cost[a.from][j] = kForbidden;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i != a.from) cost[i][a.to] = kForbidden;
    }
    if (n > 2) cost[a.to][a.from] = kForbidden;  // would close a 2-cycle
  }

  const AtspInstance& inst_;
  Clock::time_point deadline_;
  Tour best_{{}, kForbidden};
  double root_bound_ = 0.0;
  std::size_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

BnbResult branch_and_bound(const AtspInstance& inst, const BnbOptions& options) {
  validate(inst);
  return BranchAndBound(inst, options).run();
}

SymmetricTsp karp_symmetrize(const AtspInstance& inst) {
  validate(inst);
  const std::size_t n = inst.n();
  double max_cost = 0.0;
  for (const auto& row : inst.cost) {
    for (double c : row) {
      if (c != kForbidden) max_cost = std::max(max_cost, c);
    }
  }
  SymmetricTsp out;
  out.big = 1.0 + static_cast<double>(n) * max_cost;
  out.offset = static_cast<double>(n) * out.big;
  out.instance.name = inst.name + "_sym";
  out.instance.cost.assign(2 * n, std::vector<double>(2 * n, kForbidden));
  if (inst.penalty_hint) out.instance.penalty_hint = *inst.penalty_hint + out.big;
  auto& s = out.instance.cost;
  for (std::size_t i = 0; i < 2 * n; ++i) s[i][i] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s[i][n + i] = s[n + i][i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || inst.cost[i][j] == kForbidden) continue;
      s[i][n + j] = s[n + j][i] = inst.cost[i][j] + out.big;
    }
  }
  return out;
}

std::vector<std::size_t> desymmetrize_tour(std::size_t n, std::span<const std::size_t> order) {
  if (order.size() != 2 * n) throw DecodeError("symmetric tour has the wrong length");
  if (n == 0) return {};
  if (n == 1) return {0};
  const std::size_t len = order.size();
  const auto start = static_cast<std::size_t>(std::find(order.begin(), order.end(), 0) - order.begin());
  if (start == len) throw DecodeError("symmetric tour misses node 0");
  // Walk away from node 0's ghost.
  const bool forward = order[(start + 1) % len] != n;
  if (forward && order[(start + len - 1) % len] != n) {
    throw DecodeError("node 0 is not adjacent to its ghost");
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t v = order[forward ? (start + k) % len : (start + len - k) % len];
    if (k % 2 == 0) {
      if (v >= n) throw DecodeError("symmetric tour does not alternate real and ghost nodes");
      out.push_back(v);
      continue;
    }
    const std::size_t after = order[forward ? (start + k + 1) % len : (start + 2 * len - k - 1) % len];
    if (v != n + after) throw DecodeError("ghost node is not next to its real node");
  }
  return out;
}

}  // namespace watchroute
