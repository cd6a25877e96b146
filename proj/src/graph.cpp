#include "cgraph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cgraph/error.hpp"
#include "cgraph/rng.hpp"

namespace cgraph {

using nlohmann::json;
using nlohmann::ordered_json;

std::string scalar_to_string(const Scalar& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  double d = std::get<double>(value);
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, end);
}

ClusteredGraph ClusteredGraph::build(std::vector<Node> nodes, std::vector<Edge> edges,
                                     std::vector<Group> groups,
                                     const std::map<std::string, std::string>& membership) {
  ClusteredGraph g;

  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(nodes.begin(), nodes.end(), by_id);
  std::sort(groups.begin(), groups.end(), by_id);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id.empty()) throw ValidationError("empty node id");
    if (i > 0 && nodes[i].id == nodes[i - 1].id)
      throw ValidationError("duplicate node id: " + nodes[i].id);
    if (nodes[i].label.empty()) nodes[i].label = nodes[i].id;
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].id.empty()) throw ValidationError("empty group id");
    if (i > 0 && groups[i].id == groups[i - 1].id)
      throw ValidationError("duplicate group id: " + groups[i].id);
    if (groups[i].label.empty()) groups[i].label = groups[i].id;
  }
  g.nodes_ = std::move(nodes);
  g.groups_ = std::move(groups);

  for (const auto& [node_id, group_id] : membership) {
    if (!g.find_node(node_id)) throw ValidationError("membership for unknown node: " + node_id);
    if (!g.find_group(group_id))
      throw ValidationError("node " + node_id + " assigned to unknown group: " + group_id);
  }
  g.membership_.resize(g.nodes_.size());
  g.members_.assign(g.groups_.size(), {});
  for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
    auto it = membership.find(g.nodes_[i].id);
    if (it == membership.end()) throw ValidationError("node without group: " + g.nodes_[i].id);
    int gi = *g.find_group(it->second);
    g.membership_[i] = gi;
    g.members_[static_cast<std::size_t>(gi)].push_back(static_cast<int>(i));
  }
  for (std::size_t gi = 0; gi < g.groups_.size(); ++gi) {
    if (g.members_[gi].empty()) throw ValidationError("empty group: " + g.groups_[gi].id);
  }

  std::vector<std::pair<EdgeEnds, Edge>> keyed;
  keyed.reserve(edges.size());
  for (auto& e : edges) {
    auto a = g.find_node(e.source);
    auto b = g.find_node(e.target);
    if (!a) throw ValidationError("dangling endpoint: " + e.source);
    if (!b) throw ValidationError("dangling endpoint: " + e.target);
    if (*a == *b) throw ValidationError("self-loop on node: " + e.source);
    if (e.weight && !(*e.weight >= 0.0))
      throw ValidationError("negative weight on edge " + e.source + "-" + e.target);
    EdgeEnds ends{std::min(*a, *b), std::max(*a, *b)};
    e.source = g.nodes_[static_cast<std::size_t>(ends.u)].id;
    e.target = g.nodes_[static_cast<std::size_t>(ends.v)].id;
    keyed.emplace_back(ends, std::move(e));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    return std::pair(x.first.u, x.first.v) < std::pair(y.first.u, y.first.v);
  });
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first.u == keyed[i - 1].first.u && keyed[i].first.v == keyed[i - 1].first.v)
      throw ValidationError("duplicate edge: " + keyed[i].second.source + "-" +
                            keyed[i].second.target);
  }

  g.adjacency_.assign(g.nodes_.size(), {});
  g.incidence_.assign(g.nodes_.size(), {});
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    auto [u, v] = keyed[i].first;
    g.ends_.push_back(keyed[i].first);
    g.edges_.push_back(std::move(keyed[i].second));
    g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
    g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (std::size_t n = 0; n < g.nodes_.size(); ++n) {
    auto& adj = g.adjacency_[n];
    std::sort(adj.begin(), adj.end());
    for (int other : adj) g.incidence_[n].push_back(*g.find_edge(static_cast<int>(n), other));
  }
  return g;
}

std::optional<int> ClusteredGraph::find_node(std::string_view id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Node& n, std::string_view key) { return n.id < key; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<int>(it - nodes_.begin());
}

std::optional<int> ClusteredGraph::find_group(std::string_view id) const {
  auto it = std::lower_bound(groups_.begin(), groups_.end(), id,
                             [](const Group& n, std::string_view key) { return n.id < key; });
  if (it == groups_.end() || it->id != id) return std::nullopt;
  return static_cast<int>(it - groups_.begin());
}

std::optional<int> ClusteredGraph::find_edge(int a, int b) const {
  EdgeEnds key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(ends_.begin(), ends_.end(), key, [](EdgeEnds x, EdgeEnds y) {
    return std::pair(x.u, x.v) < std::pair(y.u, y.v);
  });
  if (it == ends_.end() || it->u != key.u || it->v != key.v) return std::nullopt;
  return static_cast<int>(it - ends_.begin());
}

int ClusteredGraph::node_index(std::string_view id) const {
  auto i = find_node(id);
  if (!i) throw NotFound("unknown node: " + std::string(id));
  return *i;
}

int ClusteredGraph::group_index(std::string_view id) const {
  auto i = find_group(id);
  if (!i) throw NotFound("unknown group: " + std::string(id));
  return *i;
}

std::map<std::string, std::string> ClusteredGraph::membership_map() const {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    out[nodes_[i].id] = groups_[static_cast<std::size_t>(membership_[i])].id;
  return out;
}

bool operator==(const ClusteredGraph& a, const ClusteredGraph& b) {
  auto ids = [](auto span) {
    std::vector<std::string> out;
    for (const auto& x : span) out.push_back(x.id);
    return out;
  };
  if (ids(a.nodes()) != ids(b.nodes()) || ids(a.groups()) != ids(b.groups())) return false;
  if (a.edge_count() != b.edge_count()) return false;
  for (std::size_t i = 0; i < a.edge_count(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.source != y.source || x.target != y.target || x.weight != y.weight) return false;
  }
  return a.membership_ == b.membership_;
}

namespace {

Scalar scalar_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number()) return v.get<double>();
  throw ParseError("attribute value must be a string, number or boolean in " + where);
}

AttributeMap attributes_from_json(const json& obj, const std::string& where) {
  AttributeMap out;
  if (!obj.contains("attributes")) return out;
  const auto& attrs = obj.at("attributes");
  if (!attrs.is_object()) throw ParseError("attributes must be an object in " + where);
  for (const auto& [key, value] : attrs.items()) out[key] = scalar_from_json(value, where);
  return out;
}

ordered_json attributes_to_json(const AttributeMap& attrs) {
  ordered_json out = ordered_json::object();
  for (const auto& [key, value] : attrs) {
    std::visit([&](const auto& v) { out[key] = v; }, value);
  }
  return out;
}

std::string required_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string())
    throw ParseError(std::string("missing string field '") + key + "' in " + where);
  return obj.at(key).get<std::string>();
}

std::string optional_string(const json& obj, const char* key) {
  if (obj.contains(key) && obj.at(key).is_string()) return obj.at(key).get<std::string>();
  return {};
}

}  // namespace

ClusteredGraph load_clustered_graph(std::string_view document) {
  // JSON objects silently keep the last duplicate key; a node listed twice in
  // `membership` would then land in one group without complaint. The callback
  // sees every key before that happens.
  std::string current_section;
  std::set<std::string> membership_keys;
  std::string duplicate_member;
  auto callback = [&](int depth, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::key) {
      if (depth == 1) {
        current_section = parsed.get<std::string>();
      } else if (depth == 2 && current_section == "membership") {
        auto key = parsed.get<std::string>();
        if (!membership_keys.insert(key).second && duplicate_member.empty())
          duplicate_member = key;
      }
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(document.begin(), document.end(), callback);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed graph document: ") + e.what());
  }
  if (!duplicate_member.empty())
    throw ValidationError("node in two groups: " + duplicate_member);
  if (!doc.is_object()) throw ParseError("graph document must be an object");
  for (const char* key : {"nodes", "groups"}) {
    if (!doc.contains(key) || !doc.at(key).is_array())
      throw ParseError(std::string("missing array '") + key + "'");
  }
  if (doc.contains("edges") && !doc.at("edges").is_array())
    throw ParseError("'edges' must be an array");
  if (!doc.contains("membership") || !doc.at("membership").is_object())
    throw ParseError("missing object 'membership'");

  std::vector<Node> nodes;
  for (const auto& item : doc.at("nodes")) {
    Node n;
    n.id = required_string(item, "id", "nodes");
    n.label = optional_string(item, "label");
    n.attributes = attributes_from_json(item, "node " + n.id);
    nodes.push_back(std::move(n));
  }
  std::vector<Group> groups;
  for (const auto& item : doc.at("groups")) {
    Group gr;
    gr.id = required_string(item, "id", "groups");
    gr.label = optional_string(item, "label");
    gr.attributes = attributes_from_json(item, "group " + gr.id);
    groups.push_back(std::move(gr));
  }
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    for (const auto& item : doc.at("edges")) {
      Edge e;
      e.source = required_string(item, "source", "edges");
      e.target = required_string(item, "target", "edges");
      if (item.contains("weight")) {
        if (!item.at("weight").is_number())
          throw ParseError("edge weight must be a number: " + e.source + "-" + e.target);
        e.weight = item.at("weight").get<double>();
      }
      e.attributes = attributes_from_json(item, "edge " + e.source + "-" + e.target);
      edges.push_back(std::move(e));
    }
  }
  std::map<std::string, std::string> membership;
  for (const auto& [node_id, group_id] : doc.at("membership").items()) {
    if (!group_id.is_string()) throw ParseError("membership values must be group ids");
    membership[node_id] = group_id.get<std::string>();
  }
  return ClusteredGraph::build(std::move(nodes), std::move(edges), std::move(groups), membership);
}

ClusteredGraph load_clustered_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_clustered_graph(ss.str());
}

std::string serialize_graph(const ClusteredGraph& g, int indent) {
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for (const auto& n : g.nodes()) {
    ordered_json item;
    item["id"] = n.id;
    item["label"] = n.label;
    if (!n.attributes.empty()) item["attributes"] = attributes_to_json(n.attributes);
    doc["nodes"].push_back(std::move(item));
  }
  doc["edges"] = ordered_json::array();
  for (const auto& e : g.edges()) {
    ordered_json item;
    item["source"] = e.source;
    item["target"] = e.target;
    if (e.weight) item["weight"] = *e.weight;
    if (!e.attributes.empty()) item["attributes"] = attributes_to_json(e.attributes);
    doc["edges"].push_back(std::move(item));
  }
  doc["groups"] = ordered_json::array();
  for (const auto& gr : g.groups()) {
    ordered_json item;
    item["id"] = gr.id;
    item["label"] = gr.label;
    if (!gr.attributes.empty()) item["attributes"] = attributes_to_json(gr.attributes);
    doc["groups"].push_back(std::move(item));
  }
  doc["membership"] = ordered_json::object();
  for (std::size_t i = 0; i < g.node_count(); ++i)
    doc["membership"][g.node(static_cast<int>(i)).id] =
        g.group(g.group_of(static_cast<int>(i))).id;
  return doc.dump(indent) + "\n";
}

std::size_t count_groups(const ClusteredGraph& g) { return g.group_count(); }

namespace {

constexpr const char* kPalette[] = {"red",    "blue",  "green", "orange", "purple",
                                    "yellow", "brown", "pink",  "gray",   "teal"};
constexpr const char* kShapes[] = {"circle", "square", "triangle"};

std::string padded(const char* prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

}  // namespace

ClusteredGraph generate_planted_partition(const PlantedPartitionParams& params) {
  if (params.sizes.empty()) throw InvalidArgument("at least one group is required");
  for (int s : params.sizes)
    if (s < 1) throw InvalidArgument("group sizes must be positive");
  auto valid_p = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!valid_p(params.p_in) || !valid_p(params.p_out))
    throw InvalidArgument("probabilities must lie in [0, 1]");
  if (params.p_out > params.p_in) throw InvalidArgument("p_out must not exceed p_in");

  std::size_t total = 0;
  for (int s : params.sizes) total += static_cast<std::size_t>(s);
  const std::size_t node_width = std::to_string(total - 1).size();
  const std::size_t group_width = std::to_string(params.sizes.size() - 1).size();

  Rng rng(params.seed);
  std::vector<Group> groups;
  std::vector<Node> nodes;
  std::vector<std::size_t> block;
  std::map<std::string, std::string> membership;
  for (std::size_t k = 0; k < params.sizes.size(); ++k) {
    Group gr;
    gr.id = padded("g", k, group_width);
    gr.label = "Group " + std::to_string(k);
    gr.attributes["color"] = std::string(kPalette[k % std::size(kPalette)]);
    for (int i = 0; i < params.sizes[k]; ++i) {
      Node n;
      n.id = padded("v", nodes.size(), node_width);
      n.label = n.id;
      n.attributes["shape"] = std::string(kShapes[draw_below(rng, std::size(kShapes))]);
      membership[n.id] = gr.id;
      block.push_back(k);
      nodes.push_back(std::move(n));
    }
    groups.push_back(std::move(gr));
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      double p = block[i] == block[j] ? params.p_in : params.p_out;
      double u = draw_unit(rng);
      double w = static_cast<double>(1 + draw_below(rng, 9));
      if (u < p) edges.push_back(Edge{nodes[i].id, nodes[j].id, w, {}});
    }
  }
  return ClusteredGraph::build(std::move(nodes), std::move(edges), std::move(groups), membership);
}

}  // namespace cgraph
