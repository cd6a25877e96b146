#include "cgraph/metagraph.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "cgraph/error.hpp"

namespace cgraph {

const char* to_string(MetagraphVariant v) {
  return v == MetagraphVariant::LinkBased ? "link-based" : "contact-based";
}

Metagraph::Metagraph(MetagraphVariant variant, std::vector<std::string> metanodes,
                     std::vector<MetaEdge> edges)
    : variant_(variant), metanodes_(std::move(metanodes)), edges_(std::move(edges)) {
  adjacency_.assign(metanodes_.size(), {});
  for (auto& e : edges_) {
    if (e.a == e.b) throw InvalidArgument("metaedge loop on " + metanodes_[static_cast<std::size_t>(e.a)]);
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const MetaEdge& x, const MetaEdge& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
  for (const auto& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.a)].push_back(e.b);
    adjacency_[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

bool Metagraph::adjacent(int a, int b) const {
  const auto& adj = adjacency_[static_cast<std::size_t>(a)];
  return std::binary_search(adj.begin(), adj.end(), b);
}

std::optional<double> Metagraph::weight(int a, int b) const {
  MetaEdge key{std::min(a, b), std::max(a, b), 0.0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, [](const MetaEdge& x, const MetaEdge& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  if (it == edges_.end() || it->a != key.a || it->b != key.b) return std::nullopt;
  return it->weight;
}

namespace {

std::vector<std::string> group_ids(const ClusteredGraph& g) {
  std::vector<std::string> ids;
  for (const auto& gr : g.groups()) ids.push_back(gr.id);
  return ids;
}

}  // namespace

Metagraph build_link_metagraph(const ClusteredGraph& g, int min_links) {
  if (min_links < 1) throw InvalidArgument("metaedge threshold must be at least 1");
  std::map<std::pair<int, int>, int> links;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.ends(static_cast<int>(e));
    int a = g.group_of(u);
    int b = g.group_of(v);
    if (a != b) ++links[{std::min(a, b), std::max(a, b)}];
  }
  std::vector<MetaEdge> edges;
  for (const auto& [pair, count] : links)
    if (count >= min_links) edges.push_back({pair.first, pair.second, static_cast<double>(count)});
  return Metagraph(MetagraphVariant::LinkBased, group_ids(g), std::move(edges));
}

Metagraph build_contact_metagraph(const RegionRaster& r, const ClusteredGraph& g) {
  auto ids = group_ids(g);
  if (!std::equal(ids.begin(), ids.end(), r.group_ids().begin(), r.group_ids().end()))
    throw InvalidArgument("raster and graph have different group sets");
  std::vector<MetaEdge> edges;
  for (const auto& [pair, count] : r.contacts())
    edges.push_back({pair.first, pair.second, static_cast<double>(count) * r.cell_size()});
  return Metagraph(MetagraphVariant::ContactBased, std::move(ids), std::move(edges));
}

std::string serialize_metagraph(const Metagraph& m, const ClusteredGraph& g, int indent) {
  nlohmann::ordered_json doc;
  doc["variant"] = to_string(m.variant());
  doc["nodes"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    nlohmann::ordered_json node;
    node["id"] = m.metanodes()[i];
    node["label"] = g.group(static_cast<int>(i)).label;
    node["attributes"] = {{"size", g.members(static_cast<int>(i)).size()}};
    doc["nodes"].push_back(std::move(node));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : m.edges()) {
    nlohmann::ordered_json edge;
    edge["source"] = m.metanodes()[static_cast<std::size_t>(e.a)];
    edge["target"] = m.metanodes()[static_cast<std::size_t>(e.b)];
    edge["weight"] = e.weight;
    doc["edges"].push_back(std::move(edge));
  }
  return doc.dump(indent);
}

}  // namespace cgraph
