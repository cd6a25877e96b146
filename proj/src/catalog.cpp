#include <algorithm>

#include "cgraph/error.hpp"
#include "cgraph/tasks.hpp"

namespace cgraph {

const char* to_string(TaskCategory c) {
  switch (c) {
    case TaskCategory::GroupOnly: return "group-only";
    case TaskCategory::GroupNode: return "group-node";
    case TaskCategory::GroupLink: return "group-link";
    case TaskCategory::GroupNetwork: return "group-network";
  }
  return "?";
}

const char* to_string(ParamKind k) {
  switch (k) {
    case ParamKind::Group: return "group";
    case ParamKind::Node: return "node";
    case ParamKind::Integer: return "integer";
    case ParamKind::Predicate: return "predicate";
    case ParamKind::Direction: return "direction";
  }
  return "?";
}

namespace {

const char* search_name(SearchKind s) {
  switch (s) {
    case SearchKind::Lookup: return "lookup";
    case SearchKind::Locate: return "locate";
    case SearchKind::Browse: return "browse";
    case SearchKind::Explore: return "explore";
  }
  return "?";
}

const char* search_title(SearchKind s) {
  switch (s) {
    case SearchKind::Lookup: return "Look up";
    case SearchKind::Locate: return "Locate";
    case SearchKind::Browse: return "Browse";
    case SearchKind::Explore: return "Explore";
  }
  return "?";
}

const char* query_name(QueryLevel q) {
  switch (q) {
    case QueryLevel::Identify: return "identify";
    case QueryLevel::Compare: return "compare";
    case QueryLevel::Summarize: return "summarize";
  }
  return "?";
}

const char* query_title(QueryLevel q) {
  switch (q) {
    case QueryLevel::Identify: return "Identify";
    case QueryLevel::Compare: return "Compare";
    case QueryLevel::Summarize: return "Summarize";
  }
  return "?";
}

template <typename Enum, typename Namer>
Enum enum_from(const std::string& text, Namer namer, std::initializer_list<Enum> values) {
  for (Enum v : values)
    if (text == namer(v)) return v;
  throw ParseError("unknown descriptor value: " + text);
}

using P = ParamSlot;
constexpr auto G = ParamKind::Group;
constexpr auto N = ParamKind::Node;
constexpr auto I = ParamKind::Integer;
constexpr auto Pr = ParamKind::Predicate;
constexpr auto D = ParamKind::Direction;

struct Row {
  const char* id;
  TaskCategory category;
  const char* prompt;
  std::vector<ParamSlot> params;
  AnswerKind answer;
  Knowledge knowledge;
  QueryLevel query;
  const char* inputs;
  const char* outputs;
  std::vector<std::string> how;
  const char* operation;
  const char* note;
};

TaskTemplate make(Row r) {
  TaskTemplate t;
  t.id = r.id;
  t.category = r.category;
  t.prompt_pattern = r.prompt;
  t.parameters = std::move(r.params);
  t.answer_kind = r.answer;
  t.default_knowledge = r.knowledge;
  t.default_descriptor.why.search = search_kind_for(r.knowledge);
  t.default_descriptor.why.query = r.query;
  t.default_descriptor.what = {r.inputs, r.outputs};
  t.default_descriptor.how = std::move(r.how);
  t.operation = r.operation;
  t.note = r.note;
  return t;
}

std::vector<TaskTemplate> build_catalog() {
  using enum TaskCategory;
  using enum QueryLevel;
  using AK = AnswerKind;
  const Knowledge known{true, false};
  const Knowledge unknown{false, false};
  const char* extremal_note =
      "Ties are resolved by group id; any group with the extreme value is scored correct.";

  std::vector<Row> rows = {
      // Group only
      {"GO-1", GroupOnly, "Find the set of group-neighbors of the given group {X}.", {P{"X", G}},
       AK::GroupIdSet, known, Identify, "Input: Group X", "Output: Set of groups", {"Select"},
       "neighbors", ""},
      {"GO-2", GroupOnly, "How many groups are neighbors of group {X}?", {P{"X", G}}, AK::Integer,
       known, Identify, "Input: Group X", "Output: Number", {"Derive", "Select"}, "neighbors", ""},
      {"GO-3", GroupOnly, "Which group has the {extreme} number of neighboring groups?",
       {P{"extreme", D}}, AK::GroupId, unknown, Summarize, "Input: Entire map",
       "Output: One group", {"Derive", "Select"}, "extremal_groups(neighbor-count)", extremal_note},
      {"GO-4", GroupOnly, "Find the set of groups accessible from group {X}.", {P{"X", G}},
       AK::GroupIdSet, known, Identify, "Input: Group X", "Output: Set of groups",
       {"Select", "Navigate"}, "accessible", ""},
      {"GO-5", GroupOnly, "How many groups are accessible from group {X}?", {P{"X", G}},
       AK::Integer, known, Identify, "Input: Group X", "Output: Number",
       {"Derive", "Navigate"}, "accessible", ""},
      {"GO-6", GroupOnly, "Find the set of groups one group away from group {X}.", {P{"X", G}},
       AK::GroupIdSet, known, Identify, "Input: Group X", "Output: Set of groups",
       {"Select", "Navigate"}, "groups_at_distance(2)",
       "\"One group away\" is read as metagraph distance 2 (one intermediate group); "
       "rephrase the prompt if distance 1 is intended."},
      {"GO-7", GroupOnly,
       "Given two groups {X} and {Y}, find a set of groups that are adjacent to both of them.",
       {P{"X", G}, P{"Y", G}}, AK::GroupIdSet, known, Compare, "Input: Groups X and Y",
       "Output: Set of groups", {"Select"}, "common_neighbors", ""},
      {"GO-8", GroupOnly, "Find the shortest path between groups {X} and {Y}.",
       {P{"X", G}, P{"Y", G}}, AK::GroupIdList, known, Identify, "Input: Groups X and Y",
       "Output: Ordered list of groups", {"Select", "Navigate"}, "shortest_group_path",
       "Path length counts metagraph hops; any minimum-hop group path is scored correct."},
      {"GO-9", GroupOnly, "Find a group with specific characteristics ({P}).", {P{"P", Pr}},
       AK::GroupId, known, Identify, "Input: Group characteristics", "Output: One group",
       {"Select"}, "find_groups", "Any group satisfying the characteristics is scored correct."},
      {"GO-10", GroupOnly, "Find the group with the {extreme} area.", {P{"extreme", D}},
       AK::GroupId, unknown, Summarize, "Input: Entire map", "Output: One group",
       {"Derive", "Select"}, "extremal_groups(area)", extremal_note},
      {"GO-11", GroupOnly, "Are the given two groups {X} and {Y} neighbors?",
       {P{"X", G}, P{"Y", G}}, AK::Boolean, known, Identify, "Input: Groups X and Y",
       "Output: Yes / No", {"Select"}, "are_adjacent", ""},
      {"GO-12", GroupOnly, "Find a group whose removal from the visualization disconnects the map.",
       {}, AK::GroupId, unknown, Identify, "Input: Entire map", "Output: One group",
       {"Derive", "Select"}, "articulation_groups",
       "Evaluated on the metagraph; any articulation group is scored correct."},
      {"GO-13", GroupOnly, "How many groups are there?", {}, AK::Integer, unknown, Summarize,
       "Input: Entire map", "Output: Number", {"Derive"}, "count_groups", ""},
      {"GO-14", GroupOnly, "Find a group which has the {extreme} boundary with group {X}.",
       {P{"X", G}, P{"extreme", D}}, AK::GroupId, {true, false}, Compare,
       "Input: Group X", "Output: One group", {"Derive", "Select"},
       "extremal_groups(shared-boundary-with)",
       "Only groups whose region touches X are candidates."},
      // Group-node
      {"GN-1", GroupNode, "Given a node {X}, find the group which contains {X}.", {P{"X", N}},
       AK::GroupId, known, Identify, "Input: Node X", "Output: One group", {"Select"},
       "group_of", ""},
      {"GN-2", GroupNode, "Count the number of nodes in group {X}.", {P{"X", G}}, AK::Integer,
       known, Identify, "Input: Group X", "Output: Number", {"Derive", "Select"},
       "group_metric(node-count)", ""},
      {"GN-3", GroupNode, "Find the group with the {extreme} number of nodes.", {P{"extreme", D}},
       AK::GroupId, unknown, Summarize, "Input: Entire map", "Output: One group",
       {"Derive", "Select"}, "extremal_groups(node-count)", extremal_note},
      {"GN-4", GroupNode,
       "Given two nodes {X} and {Y}, check whether these two nodes belong to the same group.",
       {P{"X", N}, P{"Y", N}}, AK::Boolean, known, Compare, "Input: Nodes X and Y",
       "Output: Yes / No", {"Select"}, "same_group", ""},
      {"GN-5", GroupNode, "List groups which contain nodes with specific characteristics ({P}).",
       {P{"P", Pr}}, AK::GroupIdSet, known, Identify, "Input: Node characteristics",
       "Output: Set of groups", {"Select"}, "groups_containing", ""},
      // Group-link
      {"GL-1", GroupLink, "Count the number of links in group {X}.", {P{"X", G}}, AK::Integer,
       known, Identify, "Input: Group X", "Output: Number", {"Derive", "Select"},
       "group_metric(intra-link-count)", ""},
      {"GL-2", GroupLink, "Find the {k} groups with the {extreme} links.",
       {P{"k", I}, P{"extreme", D}}, AK::GroupIdList, unknown, Summarize, "Input: Entire map",
       "Output: Three groups", {"Derive", "Select"}, "extremal_groups(intra-link-count)",
       "k defaults to 3 (the worked top-3 example); with k = 1 the prompt reads "
       "\"Find the group with the maximum (minimum) number of links.\" "
       "Any order among equally linked groups is scored correct."},
      {"GL-3", GroupLink, "Find the most {extreme} connected group.", {P{"extreme", D}},
       AK::GroupId, unknown, Summarize, "Input: Entire map", "Output: One group",
       {"Derive", "Select"}, "extremal_groups(density)",
       "Singleton groups have no density and are never candidates."},
      {"GL-4", GroupLink,
       "Find the group that contains the longest link (or the pair of groups at the endpoints of "
       "the longest link).",
       {}, AK::Pair, unknown, Identify, "Input: Entire map",
       "Output: One group or a pair of groups", {"Derive", "Select"}, "longest_link_location",
       "Link length is measured in the layout."},
      {"GL-5", GroupLink, "List groups which contain a link with specific characteristics ({P}).",
       {P{"P", Pr}}, AK::GroupIdSet, known, Identify, "Input: Link characteristics",
       "Output: Set of groups", {"Select"}, "groups_with_links", ""},
      // Group-network
      {"GX-1", GroupNetwork,
       "Find two groups with a link between them, whose removal disconnects the network.", {},
       AK::Pair, unknown, Identify, "Input: Entire map", "Output: Two groups",
       {"Derive", "Select"}, "bridging_group_pairs", "Any bridging pair is scored correct."},
      {"GX-2", GroupNetwork,
       "Given two groups {X} and {Y}, can they be disconnected by removing no more than {n} links?",
       {P{"X", G}, P{"Y", G}, P{"n", I}}, AK::Boolean, known, Compare,
       "Input: Groups X and Y, number n", "Output: Yes / No", {"Derive", "Select"},
       "min_intergroup_cut", ""},
      {"GX-3", GroupNetwork, "Find a group which has the node with {extreme} degree.",
       {P{"extreme", D}}, AK::GroupId, unknown, Summarize, "Input: Entire map",
       "Output: One group", {"Derive", "Select"}, "extremal_groups(max/min-node-degree)",
       extremal_note},
      {"GX-4", GroupNetwork, "Find the path {X}-{Y}-{Z}; are nodes {X} and {Z} in the same group?",
       {P{"X", N}, P{"Y", N}, P{"Z", N}}, AK::Boolean, known, Compare, "Input: Nodes X, Y and Z",
       "Output: Yes / No", {"Select", "Navigate"}, "path_group_check", ""},
      {"GX-5", GroupNetwork,
       "Given two nodes {X} and {Y} in different groups, what is the smallest number of groups "
       "that need to be visited on a path from {X} to {Y}?",
       {P{"X", N}, P{"Y", N}}, AK::Integer, known, Identify, "Input: Nodes X and Y",
       "Output: Number", {"Derive", "Navigate"}, "min_distinct_groups_path",
       "Counts the groups of both endpoints."},
  };

  std::vector<TaskTemplate> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(make(std::move(r)));
  return out;
}

}  // namespace

SearchKind search_kind_for(Knowledge k) {
  if (k.target_known) return k.location_known ? SearchKind::Lookup : SearchKind::Locate;
  return k.location_known ? SearchKind::Browse : SearchKind::Explore;
}

std::string TaskDescriptor::why_summary() const {
  std::string out;
  if (why.discover) out = "Discover + ";
  out += search_title(why.search);
  out += " + ";
  out += query_title(why.query);
  return out;
}

std::string TaskDescriptor::how_summary() const {
  std::string out;
  for (const auto& h : how) {
    if (!out.empty()) out += " + ";
    out += h;
  }
  return out;
}

nlohmann::ordered_json TaskDescriptor::to_json() const {
  nlohmann::ordered_json j;
  j["why"]["goal"] = why.goal;
  j["why"]["discover"] = why.discover;
  j["why"]["search"] = search_name(why.search);
  j["why"]["query"] = query_name(why.query);
  j["why"]["summary"] = why_summary();
  j["what"]["inputs"] = what.inputs;
  j["what"]["outputs"] = what.outputs;
  j["how"] = how;
  j["how_summary"] = how_summary();
  return j;
}

TaskDescriptor TaskDescriptor::from_json(const nlohmann::json& j) {
  try {
    TaskDescriptor d;
    const auto& why = j.at("why");
    d.why.goal = why.at("goal").get<std::string>();
    if (d.why.goal != "consume" && d.why.goal != "produce")
      throw ParseError("descriptor goal must be consume or produce");
    d.why.discover = why.at("discover").get<bool>();
    d.why.search = enum_from(why.at("search").get<std::string>(), search_name,
                             {SearchKind::Lookup, SearchKind::Locate, SearchKind::Browse,
                              SearchKind::Explore});
    d.why.query = enum_from(why.at("query").get<std::string>(), query_name,
                            {QueryLevel::Identify, QueryLevel::Compare, QueryLevel::Summarize});
    d.what.inputs = j.at("what").at("inputs").get<std::string>();
    d.what.outputs = j.at("what").at("outputs").get<std::string>();
    d.how = j.at("how").get<std::vector<std::string>>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed descriptor: ") + e.what());
  }
}

std::string TaskDescriptor::serialize() const { return to_json().dump(2) + "\n"; }

const std::vector<TaskTemplate>& list_templates() {
  static const std::vector<TaskTemplate> catalog = build_catalog();
  return catalog;
}

const TaskTemplate& find_template(std::string_view id) {
  const auto& all = list_templates();
  auto it = std::find_if(all.begin(), all.end(), [&](const TaskTemplate& t) { return t.id == id; });
  if (it == all.end()) throw NotFound("unknown template: " + std::string(id));
  return *it;
}

TaskDescriptor describe(std::string_view template_id, Knowledge knowledge) {
  TaskDescriptor d = find_template(template_id).default_descriptor;
  d.why.search = search_kind_for(knowledge);
  return d;
}

}  // namespace cgraph
