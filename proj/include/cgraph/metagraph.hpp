#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgraph/graph.hpp"
#include "cgraph/layout.hpp"

namespace cgraph {

enum class MetagraphVariant { LinkBased, ContactBased };

const char* to_string(MetagraphVariant v);

struct MetaEdge {
  int a = 0;  // group index, a < b
  int b = 0;
  double weight = 0.0;

  friend bool operator==(const MetaEdge&, const MetaEdge&) = default;
};

/// Groups as metanodes, indexed like ClusteredGraph::groups(). Metaedges are
/// unordered, loop-free and sorted by (a, b).
class Metagraph {
 public:
  Metagraph() = default;
  Metagraph(MetagraphVariant variant, std::vector<std::string> metanodes,
            std::vector<MetaEdge> edges);

  MetagraphVariant variant() const { return variant_; }
  std::size_t size() const { return metanodes_.size(); }
  std::span<const std::string> metanodes() const { return metanodes_; }
  std::span<const MetaEdge> edges() const { return edges_; }
  /// Neighboring metanodes in ascending order.
  std::span<const int> neighbors(int group) const {
    return adjacency_[static_cast<std::size_t>(group)];
  }
  bool adjacent(int a, int b) const;
  std::optional<double> weight(int a, int b) const;

  friend bool operator==(const Metagraph&, const Metagraph&) = default;

 private:
  MetagraphVariant variant_ = MetagraphVariant::LinkBased;
  std::vector<std::string> metanodes_;
  std::vector<MetaEdge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// Metaedge {A, B} for every pair joined by at least `min_links` node-level
/// edges, weighted by the number of such edges.
Metagraph build_link_metagraph(const ClusteredGraph& g, int min_links = 1);

/// Metaedge {A, B} for every pair whose raster regions share boundary,
/// weighted by the shared boundary length.
Metagraph build_contact_metagraph(const RegionRaster& r, const ClusteredGraph& g);

std::string serialize_metagraph(const Metagraph& m, const ClusteredGraph& g, int indent = 2);

}  // namespace cgraph
