#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cgraph {

using Scalar = std::variant<std::string, double, bool>;
using AttributeMap = std::map<std::string, Scalar>;

std::string scalar_to_string(const Scalar& value);

struct Node {
  std::string id;
  std::string label;
  AttributeMap attributes;
};

struct Edge {
  std::string source;
  std::string target;
  std::optional<double> weight;
  AttributeMap attributes;

  /// Unweighted edges count as weight 1 for "heaviest" style predicates.
  double effective_weight() const { return weight.value_or(1.0); }
};

struct Group {
  std::string id;
  std::string label;
  AttributeMap attributes;
};

/// Endpoint indices of an edge after canonicalization, `u < v`.
struct EdgeEnds {
  int u = 0;
  int v = 0;
};

/// A simple undirected graph with a total, single-valued partition of its
/// nodes into groups. Immutable after construction.
///
/// Nodes, groups and edges are stored in canonical order: nodes and groups
/// sorted by id, edges sorted by the (smaller, larger) endpoint index pair.
/// Consequently every "smaller id" tie-break in the library reduces to a
/// smaller index.
class ClusteredGraph {
 public:
  ClusteredGraph() = default;

  /// Validates and canonicalizes. Throws ValidationError naming the first
  /// violated invariant.
  static ClusteredGraph build(std::vector<Node> nodes, std::vector<Edge> edges,
                              std::vector<Group> groups,
                              const std::map<std::string, std::string>& membership);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t group_count() const { return groups_.size(); }

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Group> groups() const { return groups_; }

  const Node& node(int index) const { return nodes_[static_cast<std::size_t>(index)]; }
  const Edge& edge(int index) const { return edges_[static_cast<std::size_t>(index)]; }
  const Group& group(int index) const { return groups_[static_cast<std::size_t>(index)]; }
  EdgeEnds ends(int edge_index) const { return ends_[static_cast<std::size_t>(edge_index)]; }

  std::optional<int> find_node(std::string_view id) const;
  std::optional<int> find_group(std::string_view id) const;
  /// Edge index joining two node indices, if any.
  std::optional<int> find_edge(int a, int b) const;

  /// Like find_node/find_group but throw NotFound.
  int node_index(std::string_view id) const;
  int group_index(std::string_view id) const;

  int group_of(int node) const { return membership_[static_cast<std::size_t>(node)]; }
  std::span<const int> members(int group) const {
    return members_[static_cast<std::size_t>(group)];
  }
  /// Neighbor node indices in ascending order.
  std::span<const int> adjacent(int node) const {
    return adjacency_[static_cast<std::size_t>(node)];
  }
  /// Edge indices incident to `node`, aligned with adjacent(node).
  std::span<const int> incident(int node) const {
    return incidence_[static_cast<std::size_t>(node)];
  }
  int degree(int node) const { return static_cast<int>(adjacent(node).size()); }
  bool is_intra(int edge_index) const {
    auto e = ends(edge_index);
    return group_of(e.u) == group_of(e.v);
  }

  std::map<std::string, std::string> membership_map() const;

  friend bool operator==(const ClusteredGraph& a, const ClusteredGraph& b);

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Group> groups_;
  std::vector<EdgeEnds> ends_;
  std::vector<int> membership_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> incidence_;
};

/// Parses and validates a graph document. Throws ParseError on malformed
/// text and ValidationError on invariant violations.
ClusteredGraph load_clustered_graph(std::string_view document);
ClusteredGraph load_clustered_graph_file(const std::string& path);

/// Canonical serialization; load_clustered_graph(serialize(g)) == g.
std::string serialize_graph(const ClusteredGraph& g, int indent = 2);

std::size_t count_groups(const ClusteredGraph& g);

struct PlantedPartitionParams {
  std::vector<int> sizes;  // one entry per group
  double p_in = 1.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;
};

/// Planted-partition random graph. Each intra-group pair becomes an edge with
/// probability p_in, each inter-group pair with p_out. Groups get a `color`
/// attribute, nodes a `shape` attribute, edges an integer `weight` in [1, 9].
/// Deterministic for fixed parameters.
ClusteredGraph generate_planted_partition(const PlantedPartitionParams& params);

/// Uniform double in [0, 1) from a 64-bit draw; identical on every platform.
inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace cgraph
