#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgraph/graph.hpp"
#include "cgraph/layout.hpp"
#include "cgraph/metagraph.hpp"
#include "cgraph/predicate.hpp"

namespace cgraph {

/// Everything a group-level question may consult. The graph and metagraph
/// are always present; layout and raster only when geometric tasks are
/// expected. Copies share the underlying immutable objects.
struct QueryContext {
  std::shared_ptr<const ClusteredGraph> graph;
  std::shared_ptr<const Metagraph> meta;
  std::shared_ptr<const LayoutGeometry> layout;
  std::shared_ptr<const RegionRaster> raster;

  /// Link-based metagraph, no geometry.
  static QueryContext topological(ClusteredGraph g);
  /// Link-based metagraph plus layout and raster.
  static QueryContext with_geometry(ClusteredGraph g, LayoutGeometry layout,
                                    const RasterParams& raster = {});
  /// Computes the layout with `seed` and default parameters.
  static QueryContext with_geometry(ClusteredGraph g, std::uint64_t seed,
                                    const RasterParams& raster = {});

  /// Same context with the contact-based metagraph as group adjacency.
  QueryContext using_contacts() const;

  bool has_geometry() const { return layout && raster; }
  const ClusteredGraph& g() const { return *graph; }
  const Metagraph& m() const { return *meta; }
};

/// Sorted, duplicate-free id lists stand in for sets throughout.
using IdSet = std::vector<std::string>;
using GroupPair = std::pair<std::string, std::string>;

enum class MetricKind {
  NeighborCount,
  Area,
  NodeCount,
  IntraLinkCount,
  Density,
  MaxNodeDegree,
  MinNodeDegree,
  SharedBoundaryWith,
};

struct Metric {
  MetricKind kind = MetricKind::NodeCount;
  std::string reference;  // group id, SharedBoundaryWith only

  static Metric parse(std::string_view name, std::string reference = {});
  std::string name() const;
  bool geometric() const { return kind == MetricKind::Area || kind == MetricKind::SharedBoundaryWith; }
};

enum class Direction { Max, Min };

struct RankedGroups {
  std::vector<std::string> groups;
  std::vector<double> values;
  /// Eligible groups outside the top k whose value equals the k-th value.
  std::vector<std::string> tied_beyond;
  bool tie() const { return !tied_beyond.empty(); }
};

struct LinkLocation {
  std::string source;
  std::string target;
  double length = 0.0;
  /// One group for an intra-group edge, otherwise the two endpoint groups.
  IdSet container;
};

struct CutResult {
  long long value = 0;
  /// Node-level edges (sorted endpoint ids) whose removal separates the groups.
  std::vector<std::pair<std::string, std::string>> witness;
};

struct PathGroupCheck {
  bool path_exists = false;
  bool same_group = false;
};

struct LabelPath {
  int count = 0;
  /// Node path attaining `count`; empty when only a bound is reported.
  std::vector<std::string> witness;
  bool exact = true;
};

namespace queries {

inline constexpr int kDefaultExactGroupLimit = 16;

IdSet neighbors(const QueryContext& ctx, std::string_view group);
IdSet accessible(const QueryContext& ctx, std::string_view group);
/// Groups at metagraph hop distance exactly `distance`.
IdSet groups_at_distance(const QueryContext& ctx, std::string_view group, int distance);
IdSet common_neighbors(const QueryContext& ctx, std::string_view g1, std::string_view g2);
/// Minimum-hop metagraph path, lexicographically smallest among ties.
std::optional<std::vector<std::string>> shortest_group_path(const QueryContext& ctx,
                                                            std::string_view g1,
                                                            std::string_view g2);
/// Every minimum-hop path, in lexicographic order, at most `limit` of them.
std::vector<std::vector<std::string>> all_shortest_group_paths(const QueryContext& ctx,
                                                               std::string_view g1,
                                                               std::string_view g2,
                                                               std::size_t limit = 256);
IdSet find_groups(const QueryContext& ctx, const Predicate& predicate);
bool are_adjacent(const QueryContext& ctx, std::string_view g1, std::string_view g2);
/// Articulation metanodes of the metagraph.
IdSet articulation_groups(const QueryContext& ctx);

double group_metric(const QueryContext& ctx, std::string_view group, const Metric& metric);
/// Whether `group` has a defined value for `metric`.
bool metric_eligible(const QueryContext& ctx, std::string_view group, const Metric& metric);
RankedGroups extremal_groups(const QueryContext& ctx, const Metric& metric, Direction direction,
                             int k = 1);

std::string group_of(const QueryContext& ctx, std::string_view node);
bool same_group(const QueryContext& ctx, std::string_view x, std::string_view y);
/// Predicate over node attributes plus the pseudo-attributes `id` and `degree`.
IdSet groups_containing(const QueryContext& ctx, const Predicate& predicate);

LinkLocation longest_link_location(const QueryContext& ctx);
/// Predicate over edge attributes plus the pseudo-attributes `weight`
/// (missing weight counts as 1) and `length` (requires layout); `max`/`min`
/// values are resolved over all edges.
IdSet groups_with_links(const QueryContext& ctx, const Predicate& predicate);

std::vector<GroupPair> bridging_group_pairs(const QueryContext& ctx);
/// Witness is the minimum cut closest to g2.
CutResult min_intergroup_cut(const QueryContext& ctx, std::string_view g1, std::string_view g2);
PathGroupCheck path_group_check(const QueryContext& ctx, std::string_view x, std::string_view y,
                                std::string_view z);
/// Fewest distinct groups on any path from a to b. Exact when the graph has
/// at most `exact_group_limit` groups, otherwise the metagraph lower bound
/// flagged with exact = false.
std::optional<LabelPath> min_distinct_groups_path(const QueryContext& ctx, std::string_view a,
                                                  std::string_view b,
                                                  int exact_group_limit = kDefaultExactGroupLimit);

/// Metagraph hop distances from one group; -1 when unreachable.
std::vector<int> group_distances(const QueryContext& ctx, int group);

}  // namespace queries
}  // namespace cgraph
