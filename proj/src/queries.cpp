#include "cgraph/queries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

#include "cgraph/error.hpp"
#include "cgraph/flow.hpp"

namespace cgraph {

QueryContext QueryContext::topological(ClusteredGraph g) {
  QueryContext ctx;
  auto graph = std::make_shared<const ClusteredGraph>(std::move(g));
  ctx.meta = std::make_shared<const Metagraph>(build_link_metagraph(*graph));
  ctx.graph = std::move(graph);
  return ctx;
}

QueryContext QueryContext::with_geometry(ClusteredGraph g, LayoutGeometry layout,
                                         const RasterParams& raster) {
  QueryContext ctx = topological(std::move(g));
  ctx.layout = std::make_shared<const LayoutGeometry>(std::move(layout));
  ctx.raster = std::make_shared<const RegionRaster>(
      rasterize_regions(*ctx.layout, *ctx.graph, raster.cell_size, raster.reach));
  return ctx;
}

QueryContext QueryContext::with_geometry(ClusteredGraph g, std::uint64_t seed,
                                         const RasterParams& raster) {
  LayoutGeometry layout = compute_layout(g, seed);
  return with_geometry(std::move(g), std::move(layout), raster);
}

QueryContext QueryContext::using_contacts() const {
  if (!raster) throw Inapplicable("missing geometry: contact metagraph needs a raster");
  QueryContext ctx = *this;
  ctx.meta = std::make_shared<const Metagraph>(build_contact_metagraph(*raster, *graph));
  return ctx;
}

Metric Metric::parse(std::string_view name, std::string reference) {
  static const std::pair<std::string_view, MetricKind> kNames[] = {
      {"neighbor-count", MetricKind::NeighborCount},
      {"area", MetricKind::Area},
      {"node-count", MetricKind::NodeCount},
      {"intra-link-count", MetricKind::IntraLinkCount},
      {"density", MetricKind::Density},
      {"max-node-degree", MetricKind::MaxNodeDegree},
      {"min-node-degree", MetricKind::MinNodeDegree},
      {"shared-boundary-with", MetricKind::SharedBoundaryWith},
  };
  for (const auto& [text, kind] : kNames) {
    if (text == name) {
      if (kind == MetricKind::SharedBoundaryWith && reference.empty())
        throw InvalidArgument("shared-boundary-with needs a reference group");
      return Metric{kind, kind == MetricKind::SharedBoundaryWith ? std::move(reference) : ""};
    }
  }
  throw NotFound("unknown metric: " + std::string(name));
}

std::string Metric::name() const {
  switch (kind) {
    case MetricKind::NeighborCount: return "neighbor-count";
    case MetricKind::Area: return "area";
    case MetricKind::NodeCount: return "node-count";
    case MetricKind::IntraLinkCount: return "intra-link-count";
    case MetricKind::Density: return "density";
    case MetricKind::MaxNodeDegree: return "max-node-degree";
    case MetricKind::MinNodeDegree: return "min-node-degree";
    case MetricKind::SharedBoundaryWith: return "shared-boundary-with";
  }
  return "?";
}

namespace queries {

namespace {

IdSet to_ids(const ClusteredGraph& g, std::vector<int> groups) {
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  IdSet out;
  out.reserve(groups.size());
  for (int gi : groups) out.push_back(g.group(gi).id);
  return out;
}

int distinct_pair(const QueryContext& ctx, std::string_view g1, std::string_view g2) {
  int a = ctx.g().group_index(g1);
  int b = ctx.g().group_index(g2);
  if (a == b) throw InvalidArgument("the two groups must differ: " + std::string(g1));
  return a;
}

std::vector<int> bfs_distances(const Metagraph& m, int start, int skip = -1) {
  std::vector<int> dist(m.size(), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(start)] = 0;
  frontier.push(start);
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : m.neighbors(v)) {
      if (w == skip || dist[static_cast<std::size_t>(w)] >= 0) continue;
      dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
      frontier.push(w);
    }
  }
  return dist;
}

void require_geometry(const QueryContext& ctx, const char* what) {
  if (!ctx.has_geometry()) throw Inapplicable(std::string("missing geometry: ") + what);
}

/// Union-find over node indices.
class Components {
 public:
  explicit Components(std::size_t n) : parent_(n), count_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    --count_;
  }
  std::size_t count() const { return count_; }

 private:
  std::vector<int> parent_;
  std::size_t count_;
};

}  // namespace

std::vector<int> group_distances(const QueryContext& ctx, int group) {
  return bfs_distances(ctx.m(), group);
}

IdSet neighbors(const QueryContext& ctx, std::string_view group) {
  int gi = ctx.g().group_index(group);
  auto adj = ctx.m().neighbors(gi);
  return to_ids(ctx.g(), {adj.begin(), adj.end()});
}

IdSet accessible(const QueryContext& ctx, std::string_view group) {
  int gi = ctx.g().group_index(group);
  auto dist = bfs_distances(ctx.m(), gi);
  std::vector<int> out;
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (dist[i] > 0) out.push_back(static_cast<int>(i));
  return to_ids(ctx.g(), std::move(out));
}

IdSet groups_at_distance(const QueryContext& ctx, std::string_view group, int distance) {
  int gi = ctx.g().group_index(group);
  if (distance < 1) throw InvalidArgument("distance must be at least 1");
  auto dist = bfs_distances(ctx.m(), gi);
  std::vector<int> out;
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (dist[i] == distance) out.push_back(static_cast<int>(i));
  return to_ids(ctx.g(), std::move(out));
}

IdSet common_neighbors(const QueryContext& ctx, std::string_view g1, std::string_view g2) {
  distinct_pair(ctx, g1, g2);
  IdSet a = neighbors(ctx, g1);
  IdSet b = neighbors(ctx, g2);
  IdSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::optional<std::vector<std::string>> shortest_group_path(const QueryContext& ctx,
                                                            std::string_view g1,
                                                            std::string_view g2) {
  int from = ctx.g().group_index(g1);
  int to = ctx.g().group_index(g2);
  auto dist = bfs_distances(ctx.m(), to);
  if (dist[static_cast<std::size_t>(from)] < 0) return std::nullopt;
  std::vector<std::string> path{ctx.g().group(from).id};
  for (int cur = from; cur != to;) {
    // Neighbors are ascending, so the first step closer to the target is the
    // lexicographically smallest continuation.
    for (int w : ctx.m().neighbors(cur)) {
      if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(cur)] - 1) {
        cur = w;
        break;
      }
    }
    path.push_back(ctx.g().group(cur).id);
  }
  return path;
}

std::vector<std::vector<std::string>> all_shortest_group_paths(const QueryContext& ctx,
                                                               std::string_view g1,
                                                               std::string_view g2,
                                                               std::size_t limit) {
  int from = ctx.g().group_index(g1);
  int to = ctx.g().group_index(g2);
  auto dist = bfs_distances(ctx.m(), to);
  std::vector<std::vector<std::string>> out;
  if (dist[static_cast<std::size_t>(from)] < 0) return out;
  std::vector<int> stack{from};
  auto walk = [&](auto&& self, int cur) -> void {
    if (out.size() >= limit) return;
    if (cur == to) {
      std::vector<std::string> ids;
      for (int gi : stack) ids.push_back(ctx.g().group(gi).id);
      out.push_back(std::move(ids));
      return;
    }
    for (int w : ctx.m().neighbors(cur)) {
      if (dist[static_cast<std::size_t>(w)] != dist[static_cast<std::size_t>(cur)] - 1) continue;
      stack.push_back(w);
      self(self, w);
      stack.pop_back();
    }
  };
  walk(walk, from);
  return out;
}

IdSet find_groups(const QueryContext& ctx, const Predicate& predicate) {
  std::vector<int> out;
  for (std::size_t gi = 0; gi < ctx.g().group_count(); ++gi)
    if (predicate.evaluate(ctx.g().group(static_cast<int>(gi)).attributes))
      out.push_back(static_cast<int>(gi));
  return to_ids(ctx.g(), std::move(out));
}

bool are_adjacent(const QueryContext& ctx, std::string_view g1, std::string_view g2) {
  int a = distinct_pair(ctx, g1, g2);
  return ctx.m().adjacent(a, ctx.g().group_index(g2));
}

IdSet articulation_groups(const QueryContext& ctx) {
  // Iterative Hopcroft-Tarjan lowpoint computation.
  const Metagraph& m = ctx.m();
  const std::size_t n = m.size();
  std::vector<int> order(n, -1), low(n, 0), parent(n, -1), next_child(n, 0), children(n, 0);
  std::vector<bool> cut(n, false);
  int clock = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (order[root] >= 0) continue;
    std::vector<int> stack{static_cast<int>(root)};
    order[root] = low[root] = clock++;
    while (!stack.empty()) {
      int v = stack.back();
      auto sv = static_cast<std::size_t>(v);
      auto adj = m.neighbors(v);
      if (static_cast<std::size_t>(next_child[sv]) < adj.size()) {
        int w = adj[static_cast<std::size_t>(next_child[sv]++)];
        auto sw = static_cast<std::size_t>(w);
        if (order[sw] < 0) {
          parent[sw] = v;
          ++children[sv];
          order[sw] = low[sw] = clock++;
          stack.push_back(w);
        } else if (w != parent[sv]) {
          low[sv] = std::min(low[sv], order[sw]);
        }
      } else {
        stack.pop_back();
        if (parent[sv] >= 0) {
          auto sp = static_cast<std::size_t>(parent[sv]);
          low[sp] = std::min(low[sp], low[sv]);
          if (parent[sp] >= 0 && low[sv] >= order[sp]) cut[sp] = true;
        }
      }
    }
    if (children[root] >= 2) cut[root] = true;
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i)
    if (cut[i]) out.push_back(static_cast<int>(i));
  return to_ids(ctx.g(), std::move(out));
}

namespace {

int intra_links(const ClusteredGraph& g, int gi) {
  int count = 0;
  for (int v : g.members(gi))
    for (int w : g.adjacent(v))
      if (w > v && g.group_of(w) == gi) ++count;
  return count;
}

double metric_value(const QueryContext& ctx, int gi, const Metric& metric) {
  const ClusteredGraph& g = ctx.g();
  auto members = g.members(gi);
  switch (metric.kind) {
    case MetricKind::NeighborCount:
      return static_cast<double>(ctx.m().neighbors(gi).size());
    case MetricKind::Area:
      require_geometry(ctx, "area needs a raster");
      return group_area(*ctx.raster, g.group(gi).id);
    case MetricKind::NodeCount:
      return static_cast<double>(members.size());
    case MetricKind::IntraLinkCount:
      return intra_links(g, gi);
    case MetricKind::Density: {
      if (members.size() < 2)
        throw Inapplicable("undefined metric: density of singleton group " + g.group(gi).id);
      double n = static_cast<double>(members.size());
      return intra_links(g, gi) / (n * (n - 1) / 2.0);
    }
    case MetricKind::MaxNodeDegree: {
      int best = 0;
      for (int v : members) best = std::max(best, g.degree(v));
      return best;
    }
    case MetricKind::MinNodeDegree: {
      int best = g.degree(members[0]);
      for (int v : members) best = std::min(best, g.degree(v));
      return best;
    }
    case MetricKind::SharedBoundaryWith:
      require_geometry(ctx, "shared boundary needs a raster");
      return shared_boundary_length(*ctx.raster, g.group(gi).id, metric.reference);
  }
  return 0.0;
}

bool eligible(const QueryContext& ctx, int gi, const Metric& metric) {
  switch (metric.kind) {
    case MetricKind::Density:
      return ctx.g().members(gi).size() >= 2;
    case MetricKind::SharedBoundaryWith: {
      int ref = ctx.g().group_index(metric.reference);
      return gi != ref && ctx.raster->contact_count(gi, ref) > 0;
    }
    default:
      return true;
  }
}

}  // namespace

double group_metric(const QueryContext& ctx, std::string_view group, const Metric& metric) {
  int gi = ctx.g().group_index(group);
  if (metric.kind == MetricKind::SharedBoundaryWith) ctx.g().group_index(metric.reference);
  return metric_value(ctx, gi, metric);
}

bool metric_eligible(const QueryContext& ctx, std::string_view group, const Metric& metric) {
  if (metric.geometric()) require_geometry(ctx, "metric needs a raster");
  return eligible(ctx, ctx.g().group_index(group), metric);
}

RankedGroups extremal_groups(const QueryContext& ctx, const Metric& metric, Direction direction,
                             int k) {
  if (k < 1) throw InvalidArgument("k must be positive");
  if (metric.geometric()) require_geometry(ctx, "metric needs a raster");
  if (metric.kind == MetricKind::SharedBoundaryWith) ctx.g().group_index(metric.reference);

  std::vector<std::pair<double, int>> scored;
  for (std::size_t gi = 0; gi < ctx.g().group_count(); ++gi) {
    int i = static_cast<int>(gi);
    if (eligible(ctx, i, metric)) scored.emplace_back(metric_value(ctx, i, metric), i);
  }
  if (scored.empty()) throw Inapplicable("no eligible groups for metric " + metric.name());
  if (static_cast<std::size_t>(k) > scored.size())
    throw InvalidArgument("k exceeds the number of eligible groups (" +
                          std::to_string(scored.size()) + ")");
  std::stable_sort(scored.begin(), scored.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return direction == Direction::Max ? x.first > y.first : x.first < y.first;
    return x.second < y.second;
  });

  RankedGroups out;
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
    out.groups.push_back(ctx.g().group(scored[i].second).id);
    out.values.push_back(scored[i].first);
  }
  for (std::size_t i = static_cast<std::size_t>(k); i < scored.size(); ++i)
    if (scored[i].first == out.values.back()) out.tied_beyond.push_back(ctx.g().group(scored[i].second).id);
  return out;
}

std::string group_of(const QueryContext& ctx, std::string_view node) {
  return ctx.g().group(ctx.g().group_of(ctx.g().node_index(node))).id;
}

bool same_group(const QueryContext& ctx, std::string_view x, std::string_view y) {
  const auto& g = ctx.g();
  return g.group_of(g.node_index(x)) == g.group_of(g.node_index(y));
}

IdSet groups_containing(const QueryContext& ctx, const Predicate& predicate) {
  const auto& g = ctx.g();
  std::vector<int> out;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const Node& node = g.node(static_cast<int>(v));
    auto lookup = [&](std::string_view name) -> std::optional<Scalar> {
      if (name == "id") return node.id;
      if (name == "degree") return static_cast<double>(g.degree(static_cast<int>(v)));
      auto it = node.attributes.find(std::string(name));
      if (it == node.attributes.end()) return std::nullopt;
      return it->second;
    };
    if (predicate.evaluate(lookup)) out.push_back(g.group_of(static_cast<int>(v)));
  }
  return to_ids(g, std::move(out));
}

LinkLocation longest_link_location(const QueryContext& ctx) {
  require_geometry(ctx, "longest link needs a layout");
  const auto& g = ctx.g();
  if (g.edge_count() == 0) throw Inapplicable("graph has no links");
  int best = 0;
  double best_len = -1.0;
  // Edges are ordered by endpoint ids, so strict > keeps the smaller pair on ties.
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    double len = link_length(*ctx.layout, g, static_cast<int>(e));
    if (len > best_len) {
      best_len = len;
      best = static_cast<int>(e);
    }
  }
  auto [u, v] = g.ends(best);
  LinkLocation out;
  out.source = g.node(u).id;
  out.target = g.node(v).id;
  out.length = best_len;
  out.container = to_ids(g, {g.group_of(u), g.group_of(v)});
  return out;
}

IdSet groups_with_links(const QueryContext& ctx, const Predicate& predicate) {
  const auto& g = ctx.g();
  if (!predicate.is_constant() && predicate.attribute() == "length")
    require_geometry(ctx, "length predicates need a layout");

  auto lookup_for = [&](int e) {
    return [&g, &ctx, e](std::string_view name) -> std::optional<Scalar> {
      if (name == "weight") return g.edge(e).effective_weight();
      if (name == "length") return link_length(*ctx.layout, g, e);
      const auto& attrs = g.edge(e).attributes;
      auto it = attrs.find(std::string(name));
      if (it == attrs.end()) return std::nullopt;
      return it->second;
    };
  };

  Predicate resolved = predicate;
  if (predicate.extreme() != Predicate::Extreme::None) {
    std::optional<double> extreme;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto value = lookup_for(static_cast<int>(e))(predicate.attribute());
      if (!value) continue;
      const auto* d = std::get_if<double>(&*value);
      if (!d) throw InvalidArgument("max/min needs a numeric attribute: " + predicate.attribute());
      if (!extreme || (predicate.extreme() == Predicate::Extreme::Max ? *d > *extreme : *d < *extreme))
        extreme = *d;
    }
    if (!extreme) return {};
    resolved = predicate.resolved(*extreme);
  }

  std::vector<int> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!resolved.evaluate(lookup_for(static_cast<int>(e)))) continue;
    auto [u, v] = g.ends(static_cast<int>(e));
    out.push_back(g.group_of(u));
    out.push_back(g.group_of(v));
  }
  return to_ids(g, std::move(out));
}

std::vector<GroupPair> bridging_group_pairs(const QueryContext& ctx) {
  const auto& g = ctx.g();
  auto components_without = [&](int skip_a, int skip_b) {
    Components c(g.node_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto [u, v] = g.ends(static_cast<int>(e));
      int a = std::min(g.group_of(u), g.group_of(v));
      int b = std::max(g.group_of(u), g.group_of(v));
      if (a == skip_a && b == skip_b) continue;
      c.join(u, v);
    }
    return c.count();
  };
  const std::size_t base = components_without(-1, -1);
  std::set<std::pair<int, int>> pairs;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.ends(static_cast<int>(e));
    int a = g.group_of(u);
    int b = g.group_of(v);
    if (a != b) pairs.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<GroupPair> out;
  for (const auto& [a, b] : pairs)
    if (components_without(a, b) > base) out.emplace_back(g.group(a).id, g.group(b).id);
  return out;
}

CutResult min_intergroup_cut(const QueryContext& ctx, std::string_view g1, std::string_view g2) {
  const auto& g = ctx.g();
  int a = distinct_pair(ctx, g1, g2);
  int b = g.group_index(g2);
  const int n = static_cast<int>(g.node_count());
  const int source = n;
  const int sink = n + 1;
  const long long unbounded = static_cast<long long>(g.edge_count()) + 1;

  FlowNetwork net(n + 2);
  for (int v : g.members(a)) net.add_arc(source, v, unbounded);
  for (int v : g.members(b)) net.add_arc(v, sink, unbounded);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.ends(static_cast<int>(e));
    net.add_edge(u, v, 1);
  }
  CutResult out;
  out.value = net.max_flow(source, sink);
  // Cut nearest g2: edges leaving the set that still reaches the sink.
  auto side = net.sink_side(sink);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.ends(static_cast<int>(e));
    if (side[static_cast<std::size_t>(u)] != side[static_cast<std::size_t>(v)])
      out.witness.emplace_back(g.node(u).id, g.node(v).id);
  }
  return out;
}

PathGroupCheck path_group_check(const QueryContext& ctx, std::string_view x, std::string_view y,
                                std::string_view z) {
  const auto& g = ctx.g();
  int xi = g.node_index(x);
  int yi = g.node_index(y);
  int zi = g.node_index(z);
  if (xi == yi || yi == zi || xi == zi) throw InvalidArgument("path nodes must be pairwise distinct");
  PathGroupCheck out;
  out.path_exists = g.find_edge(xi, yi).has_value() && g.find_edge(yi, zi).has_value();
  out.same_group = g.group_of(xi) == g.group_of(zi);
  return out;
}

std::optional<LabelPath> min_distinct_groups_path(const QueryContext& ctx, std::string_view a,
                                                  std::string_view b, int exact_group_limit) {
  const auto& g = ctx.g();
  const int from = g.node_index(a);
  const int to = g.node_index(b);
  const int ga = g.group_of(from);
  const int gb = g.group_of(to);
  if (ga == gb) throw InvalidArgument("nodes must lie in different groups");

  // BFS restricted to nodes whose group is allowed; returns the node path.
  auto search = [&](const std::vector<bool>& allowed) -> std::vector<int> {
    std::vector<int> parent(g.node_count(), -2);
    std::queue<int> frontier;
    parent[static_cast<std::size_t>(from)] = -1;
    frontier.push(from);
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      if (v == to) break;
      for (int w : g.adjacent(v)) {
        if (parent[static_cast<std::size_t>(w)] != -2 ||
            !allowed[static_cast<std::size_t>(g.group_of(w))])
          continue;
        parent[static_cast<std::size_t>(w)] = v;
        frontier.push(w);
      }
    }
    if (parent[static_cast<std::size_t>(to)] == -2) return {};
    std::vector<int> path;
    for (int v = to; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  };

  const std::size_t groups = g.group_count();
  if (search(std::vector<bool>(groups, true)).empty()) return std::nullopt;

  const Metagraph link_meta =
      ctx.m().variant() == MetagraphVariant::LinkBased ? ctx.m() : build_link_metagraph(g);
  const int lower = bfs_distances(link_meta, ga)[static_cast<std::size_t>(gb)] + 1;

  if (static_cast<int>(groups) > exact_group_limit) return LabelPath{lower, {}, false};

  std::vector<int> others;
  for (std::size_t gi = 0; gi < groups; ++gi)
    if (static_cast<int>(gi) != ga && static_cast<int>(gi) != gb) others.push_back(static_cast<int>(gi));

  for (int size = lower; size <= static_cast<int>(groups); ++size) {
    const int extra = size - 2;
    std::vector<int> pick(static_cast<std::size_t>(extra));
    std::iota(pick.begin(), pick.end(), 0);
    const int pool = static_cast<int>(others.size());
    for (;;) {
      std::vector<bool> allowed(groups, false);
      allowed[static_cast<std::size_t>(ga)] = allowed[static_cast<std::size_t>(gb)] = true;
      for (int p : pick) allowed[static_cast<std::size_t>(others[static_cast<std::size_t>(p)])] = true;
      auto path = search(allowed);
      if (!path.empty()) {
        LabelPath out;
        out.count = size;
        for (int v : path) out.witness.push_back(g.node(v).id);
        return out;
      }
      // Next combination of `extra` indices out of `pool`, lexicographic.
      int i = extra - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == pool - extra + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < extra; ++j)
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return std::nullopt;  // unreachable: the full group set admits a path
}

}  // namespace queries
}  // namespace cgraph
