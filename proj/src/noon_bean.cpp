#include <algorithm>
#include <limits>

#include "watchroute/errors.hpp"
#include "watchroute/gtsp_reduction.hpp"

namespace watchroute {

std::string to_string(ArcCategory c) {
  switch (c) {
    case ArcCategory::kForbidden: return "forbidden";
    case ArcCategory::kIntracluster: return "intracluster";
    case ArcCategory::kIntercluster: return "intercluster";
    case ArcCategory::kIntranode: return "intranode";
    case ArcCategory::kDepotOutgoing: return "depot-outgoing";
    case ArcCategory::kDepotIncoming: return "depot-incoming";
    case ArcCategory::kDepotIdle: return "depot-idle";
    case ArcCategory::kDepotReturn: return "depot-return";
  }
  return "?";
}

namespace {

/// Prim on a dense matrix; returns (cost, edge count).
std::pair<double, std::size_t> mst(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {0.0, 0};
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<char> in(n, 0);
  key[0] = 0.0;
  double total = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in[v] && (u == n || key[v] < key[u])) u = v;
    }
    in[u] = 1;
    total += key[u];
    for (std::size_t v = 0; v < n; ++v) {
      if (!in[v]) key[v] = std::min(key[v], cost[u][v]);
    }
  }
  return {total, n - 1};
}

/// Cluster c contains another cluster, or equals an earlier one.
bool dominated(const std::vector<std::vector<std::size_t>>& clusters, std::size_t c) {
  const auto& a = clusters[c];
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    if (j == c) continue;
    const auto& b = clusters[j];
    if (b.size() > a.size() || !std::includes(a.begin(), a.end(), b.begin(), b.end())) continue;
    if (b.size() < a.size() || j < c) return true;
  }
  return false;
}

}  // namespace

AtspInstance NoonBeanGraph::atsp() const {
  AtspInstance out;
  out.name = "noon_bean";
  const std::size_t n = nodes.size();
  out.cost.assign(n, std::vector<double>(n, kForbidden));
  for (std::size_t i = 0; i < n; ++i) {
    out.cost[i][i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && category[i][j] != ArcCategory::kForbidden) out.cost[i][j] = base[i][j] + penalty[i][j];
    }
  }
  out.penalty_hint = alpha + beta;
  return out;
}

double NoonBeanGraph::uniform_penalty_total() const {
  return static_cast<double>(cluster_count) * (alpha + beta);
}

NoonBeanGraph noon_bean_transform(const GtspInstance& g, const NoonBeanOptions& options) {
  NoonBeanGraph nb;
  nb.m = g.m;
  for (std::size_t c = 0; c < g.clusters.size(); ++c) {
    if (!options.drop_dominated || !dominated(g.clusters, c)) nb.kept_clusters.push_back(c);
  }
  nb.cluster_count = nb.kept_clusters.size();
  for (std::size_t c : nb.kept_clusters) {
    for (std::size_t v : g.clusters[c]) nb.nodes.push_back({NoonBeanNode::Kind::kCopy, v, c, 0});
  }
  const std::size_t copies = nb.nodes.size();
  for (std::size_t r = 0; r < g.m; ++r) nb.nodes.push_back({NoonBeanNode::Kind::kStart, 0, 0, r});
  for (std::size_t r = 0; r < g.m; ++r) nb.nodes.push_back({NoonBeanNode::Kind::kFinish, 0, 0, r});
  const std::size_t n = nb.nodes.size();

  nb.cycle_pred.resize(n);
  nb.cycle_succ.resize(n);
  for (std::size_t i = 0; i < n; ++i) nb.cycle_pred[i] = nb.cycle_succ[i] = i;
  for (std::size_t first = 0; first < copies;) {
    std::size_t last = first;
    while (last + 1 < copies && nb.nodes[last + 1].cluster == nb.nodes[first].cluster) ++last;
    for (std::size_t i = first; i <= last; ++i) {
      nb.cycle_succ[i] = i == last ? first : i + 1;
      nb.cycle_pred[i] = i == first ? last : i - 1;
    }
    first = last + 1;
  }

  const auto [mst_cost, mst_edges] = mst(g.cost);
  nb.mst_cost = mst_cost;
  nb.mst_edges = mst_edges;
  double max_incoming = 0.0;
  for (const auto& row : g.finish_cost) {
    for (double c : row) max_incoming = std::max(max_incoming, c);
  }
  const double m = static_cast<double>(g.m);
  nb.alpha = 2.0 * mst_cost + 2.0 * m * max_incoming;
  nb.beta = 2.0 * nb.alpha * (1.0 + static_cast<double>(mst_edges)) + 2.0 * m * (1.0 + nb.alpha);

  nb.base.assign(n, std::vector<double>(n, 0.0));
  nb.penalty.assign(n, std::vector<double>(n, 0.0));
  nb.category.assign(n, std::vector<ArcCategory>(n, ArcCategory::kForbidden));
  auto set = [&](std::size_t i, std::size_t j, double base, double pen, ArcCategory cat) {
    nb.base[i][j] = base;
    nb.penalty[i][j] = pen;
    nb.category[i][j] = cat;
  };
  const bool uniform = options.arrival_penalty == ArrivalPenalty::kUniform;

  for (std::size_t u = 0; u < copies; ++u) {
    const NoonBeanNode& nu = nb.nodes[u];
    if (nb.cycle_succ[u] != u) set(u, nb.cycle_succ[u], 0.0, 0.0, ArcCategory::kIntracluster);
    // Arcs leaving u are re-rooted at its cycle predecessor.
    const std::size_t tail = nb.cycle_pred[u];
    for (std::size_t w = 0; w < copies; ++w) {
      const NoonBeanNode& nw = nb.nodes[w];
      if (nw.cluster == nu.cluster) continue;
      if (nw.viewpoint == nu.viewpoint) {
        set(tail, w, 0.0, (uniform ? nb.alpha : 0.0) + nb.beta, ArcCategory::kIntranode);
      } else {
        set(tail, w, g.cost[nu.viewpoint][nw.viewpoint], nb.alpha + nb.beta,
            ArcCategory::kIntercluster);
      }
    }
    for (std::size_t r = 0; r < g.m; ++r) {
      set(tail, nb.first_finish() + r, g.finish_cost[r][nu.viewpoint], 0.0,
          ArcCategory::kDepotIncoming);
    }
  }
  for (std::size_t r = 0; r < g.m; ++r) {
    const std::size_t s = nb.first_start() + r;
    for (std::size_t w = 0; w < copies; ++w) {
      set(s, w, g.start_cost[r][nb.nodes[w].viewpoint], nb.alpha + nb.beta,
          ArcCategory::kDepotOutgoing);
    }
    for (std::size_t j = 0; j < g.m; ++j) {
      set(s, nb.first_finish() + j, g.depot_cost[r][j], 0.0, ArcCategory::kDepotIdle);
      set(nb.first_finish() + j, s, 0.0, 0.0, ArcCategory::kDepotReturn);
    }
  }
  return nb;
}

namespace {

const char* describe(NoonBeanNode::Kind k) {
  switch (k) {
    case NoonBeanNode::Kind::kCopy: return "viewpoint copy";
    case NoonBeanNode::Kind::kStart: return "start depot";
    case NoonBeanNode::Kind::kFinish: return "finish depot";
  }
  return "?";
}

std::size_t start_depot_index(const GtspInstance& g, std::size_t r) {
  return g.scenario.kind == DepotKind::kSameDepot ? 0 : r;
}

std::size_t finish_depot_index(const GtspInstance& g, std::size_t slot) {
  switch (g.scenario.kind) {
    case DepotKind::kSameDepot: return 0;
    case DepotKind::kSameFinish: return g.m;
    case DepotKind::kInterchangeable: return slot;
  }
  return 0;
}

}  // namespace

DecodedPlan decode_tour(const GtspInstance& g, const NoonBeanGraph& nb,
                        std::span<const std::size_t> tour, const SimplePolygon& polygon) {
  const std::size_t n = nb.nodes.size();
  if (tour.size() != n) throw DecodeError("tour length does not match the node count");
  std::vector<char> seen(n, 0);
  for (std::size_t v : tour) {
    if (v >= n || seen[v]) throw DecodeError("tour is not a permutation of the nodes");
    seen[v] = 1;
  }
  const auto start = static_cast<std::size_t>(
      std::find_if(tour.begin(), tour.end(),
                   [&](std::size_t v) { return nb.nodes[v].kind == NoonBeanNode::Kind::kStart; }) -
      tour.begin());
  if (start == n) throw DecodeError("tour has no start depot");

  DecodedPlan plan;
  plan.routes.resize(g.m);
  std::vector<char> cluster_done(g.clusters.size(), 0);
  const ShortestPathMap paths(polygon);
  auto at = [&](std::size_t k) { return tour[(start + k) % n]; };

  for (std::size_t k = 0; k < n;) {
    const NoonBeanNode& s = nb.nodes[at(k)];
    if (s.kind != NoonBeanNode::Kind::kStart) {
      throw DecodeError(std::string("expected a start depot, found a ") + describe(s.kind));
    }
    RobotRoute& route = plan.routes[s.depot];
    route.start_depot = start_depot_index(g, s.depot);
    ++k;
    while (k < n && nb.nodes[at(k)].kind == NoonBeanNode::Kind::kCopy) {
      // A cluster block runs entry, succ(entry), ..., pred(entry).
      const std::size_t entry = at(k);
      const std::size_t cluster = nb.nodes[entry].cluster;
      if (cluster_done[cluster]) {
        throw DecodeError("cluster " + std::to_string(cluster) + " is visited in several pieces");
      }
      cluster_done[cluster] = 1;
      std::size_t cur = entry;
      ++k;
      while (nb.cycle_succ[cur] != entry) {
        if (k >= n || at(k) != nb.cycle_succ[cur]) {
          throw DecodeError("cluster " + std::to_string(cluster) + " block breaks its cycle order");
        }
        cur = at(k);
        ++k;
      }
      const std::size_t vp = nb.nodes[entry].viewpoint;
      if (route.viewpoints.empty() || route.viewpoints.back() != vp) {
        route.viewpoints.push_back(vp);
        route.credited.emplace_back();
      }
      route.credited.back().push_back(cluster);
    }
    if (k >= n) throw DecodeError("tour ends before reaching a finish depot");
    const NoonBeanNode& f = nb.nodes[at(k)];
    if (f.kind != NoonBeanNode::Kind::kFinish) {
      throw DecodeError(std::string("expected a finish depot, found a ") + describe(f.kind));
    }
    route.finish_depot = finish_depot_index(g, f.depot);
    ++k;

    // Lengths from the raw geodesic data, independent of the arc matrix.
    const Point from = g.start_depots[s.depot];
    const Point to = g.finish_depots[f.depot];
    if (route.idle()) {
      route.length = g.depot_cost[s.depot][f.depot];
      route.polyline = route.length > 0.0 ? paths.path(from, to).polyline : std::vector<Point>{from};
    } else {
      std::vector<Point> stops{from};
      for (std::size_t v : route.viewpoints) stops.push_back(g.viewpoints[v]);
      stops.push_back(to);
      route.polyline = {from};
      for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
        const GeodesicPath leg = paths.path(stops[i], stops[i + 1]);
        route.length += leg.length;
        route.polyline.insert(route.polyline.end(), leg.polyline.begin() + 1, leg.polyline.end());
      }
    }
  }
  for (std::size_t c : nb.kept_clusters) {
    if (!cluster_done[c]) throw DecodeError("cluster " + std::to_string(c) + " is never visited");
  }
  // Dropped clusters go to the first visit of one of their viewpoints.
  for (std::size_t c = 0; c < cluster_done.size(); ++c) {
    if (cluster_done[c]) continue;
    const auto& members = g.clusters[c];
    for (RobotRoute& r : plan.routes) {
      for (std::size_t k = 0; k < r.viewpoints.size() && !cluster_done[c]; ++k) {
        if (std::binary_search(members.begin(), members.end(), r.viewpoints[k])) {
          r.credited[k].push_back(c);
          std::sort(r.credited[k].begin(), r.credited[k].end());
          cluster_done[c] = 1;
        }
      }
      if (cluster_done[c]) break;
    }
    if (!cluster_done[c]) throw DecodeError("cluster " + std::to_string(c) + " is never visited");
  }
  for (const RobotRoute& r : plan.routes) plan.total_cost += r.length;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = tour[k];
    const std::size_t j = tour[(k + 1) % n];
    plan.tour_cost += nb.base[i][j] + nb.penalty[i][j];
    plan.penalty_cost += nb.penalty[i][j];
  }
  return plan;
}

}  // namespace watchroute
