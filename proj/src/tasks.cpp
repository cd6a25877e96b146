#include "cgraph/tasks.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cgraph/error.hpp"
#include "cgraph/rng.hpp"

namespace cgraph {

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const ParamValue& lookup(const Bindings& b, std::string_view slot) {
  for (const auto& [name, value] : b)
    if (name == slot) return value;
  throw InvalidArgument("missing parameter " + std::string(slot));
}

const std::string& text_param(const Bindings& b, std::string_view slot) {
  const auto* s = std::get_if<std::string>(&lookup(b, slot));
  if (!s) throw InvalidArgument("parameter " + std::string(slot) + " must be text");
  return *s;
}

std::int64_t int_param(const Bindings& b, std::string_view slot) {
  const auto* i = std::get_if<std::int64_t>(&lookup(b, slot));
  if (!i) throw InvalidArgument("parameter " + std::string(slot) + " must be an integer");
  return *i;
}

Direction direction_param(const Bindings& b) {
  const auto& s = text_param(b, "extreme");
  if (s == "max") return Direction::Max;
  if (s == "min") return Direction::Min;
  throw InvalidArgument("direction must be max or min, got " + s);
}

std::pair<const char*, const char*> extreme_words(std::string_view id, std::int64_t k) {
  if (id == "GO-10") return {"largest", "smallest"};
  if (id == "GO-14") return {"longest", "shortest"};
  if (id == "GL-2") return k == 1 ? std::pair{"maximum", "minimum"} : std::pair{"most", "fewest"};
  if (id == "GL-3") return {"densely", "sparsely"};
  if (id == "GX-3") return {"highest", "lowest"};
  return {"maximum", "minimum"};
}

std::string count_phrase(std::int64_t k) {
  static const char* kWords[] = {"Zero", "One", "Two", "Three", "Four", "Five",
                                 "Six",  "Seven", "Eight", "Nine", "Ten"};
  if (k == 1) return "Output: One group";
  if (k >= 0 && k <= 10) return std::string("Output: ") + kWords[k] + " groups";
  return "Output: " + std::to_string(k) + " groups";
}

GroundTruth extremal_truth(const QueryContext& ctx, const Metric& metric, Direction dir, int k,
                           bool as_list) {
  RankedGroups ranked = queries::extremal_groups(ctx, metric, dir, k);
  GroundTruth t;
  if (as_list) t.value = ranked.groups;
  else t.value = ranked.groups.front();
  t.tie = ranked.tie();
  for (const auto& gr : ctx.g().groups())
    if (queries::metric_eligible(ctx, gr.id, metric))
      t.metric_values[gr.id] = queries::group_metric(ctx, gr.id, metric);
  return t;
}

GroundTruth from_choices(std::vector<AnswerValue> choices, const char* empty_reason,
                         bool global) {
  if (choices.empty()) {
    if (global) throw Inapplicable(empty_reason);
    throw InvalidArgument(empty_reason);
  }
  GroundTruth t;
  t.value = std::move(choices.front());
  t.alternatives.assign(std::make_move_iterator(choices.begin() + 1),
                        std::make_move_iterator(choices.end()));
  return t;
}

void require_distinct(const Bindings& b, const char* s1, const char* s2) {
  if (text_param(b, s1) == text_param(b, s2))
    throw InvalidArgument(std::string("parameters ") + s1 + " and " + s2 + " must differ");
}

GroundTruth evaluate(const TaskTemplate& t, const QueryContext& ctx, const Bindings& b) {
  namespace q = queries;
  const std::string& id = t.id;
  GroundTruth out;
  auto set_value = [&](AnswerValue v) {
    out.value = std::move(v);
    return out;
  };

  if (id == "GO-1") return set_value(q::neighbors(ctx, text_param(b, "X")));
  if (id == "GO-2")
    return set_value(static_cast<std::int64_t>(q::neighbors(ctx, text_param(b, "X")).size()));
  if (id == "GO-3")
    return extremal_truth(ctx, {MetricKind::NeighborCount, ""}, direction_param(b), 1, false);
  if (id == "GO-4") return set_value(q::accessible(ctx, text_param(b, "X")));
  if (id == "GO-5")
    return set_value(static_cast<std::int64_t>(q::accessible(ctx, text_param(b, "X")).size()));
  if (id == "GO-6") return set_value(q::groups_at_distance(ctx, text_param(b, "X"), 2));
  if (id == "GO-7") return set_value(q::common_neighbors(ctx, text_param(b, "X"), text_param(b, "Y")));
  if (id == "GO-8") {
    require_distinct(b, "X", "Y");
    auto paths = q::all_shortest_group_paths(ctx, text_param(b, "X"), text_param(b, "Y"));
    std::vector<AnswerValue> choices(paths.begin(), paths.end());
    return from_choices(std::move(choices), "groups X and Y are disconnected", false);
  }
  if (id == "GO-9") {
    auto matches = q::find_groups(ctx, Predicate::parse(text_param(b, "P")));
    std::vector<AnswerValue> choices(matches.begin(), matches.end());
    return from_choices(std::move(choices), "no group has the characteristics", false);
  }
  if (id == "GO-10")
    return extremal_truth(ctx, {MetricKind::Area, ""}, direction_param(b), 1, false);
  if (id == "GO-11") {
    require_distinct(b, "X", "Y");
    return set_value(q::are_adjacent(ctx, text_param(b, "X"), text_param(b, "Y")));
  }
  if (id == "GO-12") {
    auto cut = q::articulation_groups(ctx);
    std::vector<AnswerValue> choices(cut.begin(), cut.end());
    return from_choices(std::move(choices), "no group disconnects the map", true);
  }
  if (id == "GO-13") return set_value(static_cast<std::int64_t>(count_groups(ctx.g())));
  if (id == "GO-14")
    return extremal_truth(ctx, {MetricKind::SharedBoundaryWith, text_param(b, "X")},
                          direction_param(b), 1, false);

  if (id == "GN-1") return set_value(q::group_of(ctx, text_param(b, "X")));
  if (id == "GN-2")
    return set_value(static_cast<std::int64_t>(
        q::group_metric(ctx, text_param(b, "X"), {MetricKind::NodeCount, ""})));
  if (id == "GN-3")
    return extremal_truth(ctx, {MetricKind::NodeCount, ""}, direction_param(b), 1, false);
  if (id == "GN-4") {
    require_distinct(b, "X", "Y");
    return set_value(q::same_group(ctx, text_param(b, "X"), text_param(b, "Y")));
  }
  if (id == "GN-5")
    return set_value(q::groups_containing(ctx, Predicate::parse(text_param(b, "P"))));

  if (id == "GL-1")
    return set_value(static_cast<std::int64_t>(
        q::group_metric(ctx, text_param(b, "X"), {MetricKind::IntraLinkCount, ""})));
  if (id == "GL-2")
    return extremal_truth(ctx, {MetricKind::IntraLinkCount, ""}, direction_param(b),
                          static_cast<int>(int_param(b, "k")), true);
  if (id == "GL-3")
    return extremal_truth(ctx, {MetricKind::Density, ""}, direction_param(b), 1, false);
  if (id == "GL-4") return set_value(q::longest_link_location(ctx).container);
  if (id == "GL-5")
    return set_value(q::groups_with_links(ctx, Predicate::parse(text_param(b, "P"))));

  if (id == "GX-1") {
    std::vector<AnswerValue> choices;
    for (auto& [a, c] : q::bridging_group_pairs(ctx)) choices.push_back(std::vector{a, c});
    return from_choices(std::move(choices), "no pair of groups bridges the network", true);
  }
  if (id == "GX-2") {
    require_distinct(b, "X", "Y");
    auto n = int_param(b, "n");
    if (n < 0) throw InvalidArgument("n must be non-negative");
    return set_value(q::min_intergroup_cut(ctx, text_param(b, "X"), text_param(b, "Y")).value <= n);
  }
  if (id == "GX-3") {
    Direction dir = direction_param(b);
    MetricKind kind = dir == Direction::Max ? MetricKind::MaxNodeDegree : MetricKind::MinNodeDegree;
    return extremal_truth(ctx, {kind, ""}, dir, 1, false);
  }
  if (id == "GX-4") {
    auto check = q::path_group_check(ctx, text_param(b, "X"), text_param(b, "Y"), text_param(b, "Z"));
    if (!check.path_exists) throw InvalidArgument("X-Y-Z is not a path");
    return set_value(check.same_group);
  }
  if (id == "GX-5") {
    auto path = q::min_distinct_groups_path(ctx, text_param(b, "X"), text_param(b, "Y"));
    if (!path) throw InvalidArgument("no path between X and Y");
    if (!path->exact) throw Inapplicable("too many groups for an exact minimum-label path");
    return set_value(static_cast<std::int64_t>(path->count));
  }
  throw NotFound("no evaluator for template " + id);
}

bool needs_geometry(std::string_view id) {
  return id == "GO-10" || id == "GO-14" || id == "GL-4";
}

/// Stimulus-level conditions; violations make every binding ill-posed.
void check_applicable(const TaskTemplate& t, const QueryContext& ctx) {
  if (needs_geometry(t.id) && !ctx.has_geometry())
    throw Inapplicable("inapplicable template " + t.id + ": missing geometry");
  int group_slots = 0;
  int node_slots = 0;
  for (const auto& p : t.parameters) {
    group_slots += p.kind == ParamKind::Group;
    node_slots += p.kind == ParamKind::Node;
  }
  if (group_slots >= 2 && ctx.g().group_count() < 2)
    throw Inapplicable("inapplicable template " + t.id + ": needs at least 2 groups");
  if (t.id == "GX-5" && ctx.g().group_count() < 2)
    throw Inapplicable("inapplicable template " + t.id + ": needs at least 2 groups");
  if (static_cast<int>(ctx.g().node_count()) < node_slots)
    throw Inapplicable("inapplicable template " + t.id + ": needs " + std::to_string(node_slots) +
                       " nodes");
  if (t.id == "GL-4" && ctx.g().edge_count() == 0)
    throw Inapplicable("inapplicable template " + t.id + ": graph has no links");
}

std::vector<std::string> attribute_predicates(
    const std::vector<const AttributeMap*>& maps) {
  std::set<std::string> out;
  for (const auto* attrs : maps)
    for (const auto& [name, value] : *attrs)
      out.insert(Predicate::compare(name, CompareOp::Eq, value).to_string());
  return {out.begin(), out.end()};
}

std::vector<std::string> predicate_candidates(const TaskTemplate& t, const QueryContext& ctx) {
  const auto& g = ctx.g();
  std::vector<const AttributeMap*> maps;
  if (t.id == "GO-9") {
    for (const auto& gr : g.groups()) maps.push_back(&gr.attributes);
    return attribute_predicates(maps);
  }
  if (t.id == "GN-5") {
    for (const auto& n : g.nodes()) maps.push_back(&n.attributes);
    auto out = attribute_predicates(maps);
    std::set<int> degrees;
    for (std::size_t v = 0; v < g.node_count(); ++v) degrees.insert(g.degree(static_cast<int>(v)));
    for (int d : degrees) out.push_back("degree==" + std::to_string(d));
    return out;
  }
  // GL-5
  std::vector<std::string> out;
  if (g.edge_count() == 0) return out;
  out = {"weight==max", "weight==min"};
  if (ctx.has_geometry()) out.push_back("length==max");
  for (const auto& e : g.edges()) maps.push_back(&e.attributes);
  auto attrs = attribute_predicates(maps);
  out.insert(out.end(), attrs.begin(), attrs.end());
  return out;
}

std::vector<ParamValue> slot_candidates(const TaskTemplate& t, const ParamSlot& slot,
                                        const QueryContext& ctx) {
  std::vector<ParamValue> out;
  switch (slot.kind) {
    case ParamKind::Group:
      for (const auto& gr : ctx.g().groups()) out.emplace_back(gr.id);
      break;
    case ParamKind::Node:
      for (const auto& n : ctx.g().nodes()) out.emplace_back(n.id);
      break;
    case ParamKind::Direction:
      out = {std::string("max"), std::string("min")};
      break;
    case ParamKind::Integer:
      if (slot.name == "k") {
        out.emplace_back(std::min<std::int64_t>(3, static_cast<std::int64_t>(ctx.g().group_count())));
      } else {
        for (std::int64_t n = 1; n <= 4; ++n) out.emplace_back(n);
      }
      break;
    case ParamKind::Predicate:
      for (auto& p : predicate_candidates(t, ctx)) out.emplace_back(std::move(p));
      break;
  }
  return out;
}

/// Candidate bindings in a deterministic order (before shuffling).
std::vector<Bindings> candidate_bindings(const TaskTemplate& t, const QueryContext& ctx, Rng& rng) {
  const auto& g = ctx.g();
  if (t.id == "GX-4") {
    std::vector<Bindings> out;
    for (std::size_t y = 0; y < g.node_count(); ++y) {
      auto adj = g.adjacent(static_cast<int>(y));
      for (int x : adj)
        for (int z : adj)
          if (x != z)
            out.push_back({{"X", g.node(x).id}, {"Y", g.node(static_cast<int>(y)).id}, {"Z", g.node(z).id}});
    }
    return out;
  }

  std::vector<std::vector<ParamValue>> per_slot;
  std::size_t total = 1;
  for (const auto& slot : t.parameters) {
    per_slot.push_back(slot_candidates(t, slot, ctx));
    if (per_slot.back().empty())
      throw Inapplicable("inapplicable template " + t.id + ": nothing to bind to slot " + slot.name);
    total *= per_slot.back().size();
  }

  std::vector<Bindings> out;
  auto make = [&](const std::vector<std::size_t>& pick) {
    Bindings b;
    for (std::size_t s = 0; s < t.parameters.size(); ++s)
      b.emplace_back(t.parameters[s].name, per_slot[s][pick[s]]);
    return b;
  };
  constexpr std::size_t kEnumerateLimit = 50000;
  constexpr std::size_t kSampleCount = 4096;
  std::vector<std::size_t> pick(t.parameters.size(), 0);
  if (total <= kEnumerateLimit) {
    out.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
      std::size_t rest = i;
      for (std::size_t s = t.parameters.size(); s-- > 0;) {
        pick[s] = rest % per_slot[s].size();
        rest /= per_slot[s].size();
      }
      out.push_back(make(pick));
    }
  } else {
    for (std::size_t i = 0; i < kSampleCount; ++i) {
      for (std::size_t s = 0; s < t.parameters.size(); ++s) pick[s] = draw_below(rng, per_slot[s].size());
      out.push_back(make(pick));
    }
  }
  return out;
}

std::string render_prompt(const TaskTemplate& t, const Bindings& b) {
  std::string pattern = t.prompt_pattern;
  std::int64_t k = 1;
  if (t.id == "GL-2") {
    k = int_param(b, "k");
    if (k == 1) pattern = "Find the group with the {extreme} number of links.";
  }
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern[i] == '{') {
      auto close = pattern.find('}', i);
      std::string slot = pattern.substr(i + 1, close - i - 1);
      if (slot == "extreme") {
        auto [max_word, min_word] = extreme_words(t.id, k);
        out += direction_param(b) == Direction::Max ? max_word : min_word;
      } else {
        out += format_param(lookup(b, slot));
      }
      i = close + 1;
    } else {
      out += pattern[i++];
    }
  }
  return out;
}

TaskInstance assemble(const TaskTemplate& t, const QueryContext& ctx, const Bindings& bindings,
                      const InstanceOptions& options) {
  TaskInstance inst;
  inst.instance_id = options.instance_id.empty() ? t.id : options.instance_id;
  inst.template_id = t.id;
  inst.category = t.category;
  inst.answer_kind = t.answer_kind;
  inst.stimulus = options.stimulus;
  // Order bindings by slot declaration.
  for (const auto& slot : t.parameters) inst.bindings.emplace_back(slot.name, lookup(bindings, slot.name));
  inst.ground_truth = evaluate(t, ctx, inst.bindings);
  inst.ground_truth.value = normalize_answer(t.answer_kind, inst.ground_truth.value);
  for (auto& alt : inst.ground_truth.alternatives) alt = normalize_answer(t.answer_kind, alt);
  inst.prompt = options.prompt_override ? *options.prompt_override : render_prompt(t, inst.bindings);
  inst.descriptor = describe(t.id, options.knowledge.value_or(t.default_knowledge));
  if (t.id == "GL-2") inst.descriptor.what.outputs = count_phrase(int_param(inst.bindings, "k"));
  return inst;
}

}  // namespace

std::string format_param(const ParamValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::to_string(std::get<std::int64_t>(v));
}

TaskInstance bind(std::string_view template_id, const QueryContext& ctx, const Bindings& bindings,
                  const InstanceOptions& options) {
  const TaskTemplate& t = find_template(template_id);
  check_applicable(t, ctx);
  return assemble(t, ctx, bindings, options);
}

TaskInstance instantiate(std::string_view template_id, const QueryContext& ctx,
                         std::uint64_t seed, const InstanceOptions& options) {
  const TaskTemplate& t = find_template(template_id);
  check_applicable(t, ctx);
  Rng rng(seed ^ fnv1a(t.id));
  auto candidates = candidate_bindings(t, ctx, rng);
  for (std::size_t i = candidates.size(); i > 1; --i) std::swap(candidates[i - 1], candidates[draw_below(rng, i)]);
  if (candidates.empty()) candidates.emplace_back();

  std::string last_reason;
  for (const auto& b : candidates) {
    try {
      return assemble(t, ctx, b, options);
    } catch (const InvalidArgument& e) {
      last_reason = e.what();
    } catch (const Inapplicable& e) {
      if (t.parameters.empty()) throw;
      last_reason = e.what();
    }
  }
  throw Inapplicable("inapplicable template " + t.id + ": exhausted retries after " +
                     std::to_string(candidates.size()) + " candidate bindings (" + last_reason + ")");
}

GroundTruth recompute_ground_truth(const TaskInstance& instance, const QueryContext& ctx) {
  InstanceOptions options;
  options.instance_id = instance.instance_id;
  options.stimulus = instance.stimulus;
  return cgraph::bind(instance.template_id, ctx, instance.bindings, options).ground_truth;
}

std::vector<TaskInstance> instantiate_macro(const MacroTask& macro, const QueryContext& ctx,
                                            std::uint64_t seed, const StimulusRef& stimulus) {
  std::vector<TaskInstance> out;
  for (std::size_t i = 0; i < macro.template_ids.size(); ++i) {
    InstanceOptions options;
    options.instance_id = macro.id + "." + std::to_string(i + 1);
    options.stimulus = stimulus;
    out.push_back(instantiate(macro.template_ids[i], ctx, seed + i, options));
  }
  return out;
}

ScoreResult score(const TaskInstance& instance, const AnswerValue& raw) {
  const AnswerKind kind = instance.answer_kind;
  const AnswerValue answer = normalize_answer(kind, raw);
  const GroundTruth& truth = instance.ground_truth;
  ScoreResult r;
  r.normalized_answer = format_answer(kind, answer);

  auto matches_any = [&] {
    if (answer == truth.value) return true;
    return std::find(truth.alternatives.begin(), truth.alternatives.end(), answer) !=
           truth.alternatives.end();
  };

  switch (kind) {
    case AnswerKind::Boolean:
    case AnswerKind::Integer:
    case AnswerKind::NodeId:
    case AnswerKind::Pair:
      r.correct = matches_any();
      break;
    case AnswerKind::GroupId: {
      r.correct = matches_any();
      if (!r.correct && !truth.metric_values.empty()) {
        auto given = truth.metric_values.find(std::get<std::string>(answer));
        auto expected = truth.metric_values.find(std::get<std::string>(truth.value));
        r.correct = given != truth.metric_values.end() && expected != truth.metric_values.end() &&
                    given->second == expected->second;
      }
      break;
    }
    case AnswerKind::GroupIdSet: {
      const auto& given = std::get<std::vector<std::string>>(answer);
      const auto& expected = std::get<std::vector<std::string>>(truth.value);
      std::set_difference(expected.begin(), expected.end(), given.begin(), given.end(),
                          std::back_inserter(r.missing));
      std::set_difference(given.begin(), given.end(), expected.begin(), expected.end(),
                          std::back_inserter(r.extra));
      r.correct = r.missing.empty() && r.extra.empty();
      break;
    }
    case AnswerKind::GroupIdList: {
      if (truth.metric_values.empty()) {
        r.correct = matches_any();
        break;
      }
      // Ranked: position i must carry the same metric value as the truth.
      const auto& given = std::get<std::vector<std::string>>(answer);
      const auto& expected = std::get<std::vector<std::string>>(truth.value);
      std::set<std::string> distinct(given.begin(), given.end());
      r.correct = given.size() == expected.size() && distinct.size() == given.size();
      for (std::size_t i = 0; r.correct && i < given.size(); ++i) {
        auto g = truth.metric_values.find(given[i]);
        r.correct = g != truth.metric_values.end() && g->second == truth.metric_values.at(expected[i]);
      }
      break;
    }
  }
  return r;
}

nlohmann::ordered_json ground_truth_to_json(AnswerKind kind, const GroundTruth& truth) {
  nlohmann::ordered_json j;
  j["value"] = answer_to_json(kind, truth.value);
  j["alternatives"] = nlohmann::ordered_json::array();
  for (const auto& alt : truth.alternatives) j["alternatives"].push_back(nlohmann::ordered_json(answer_to_json(kind, alt)));
  j["metric_values"] = nlohmann::ordered_json::object();
  for (const auto& [gid, v] : truth.metric_values) j["metric_values"][gid] = v;
  j["tie"] = truth.tie;
  return j;
}

GroundTruth ground_truth_from_json(AnswerKind kind, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("value")) throw ParseError("answer key entry needs a value");
  GroundTruth t;
  t.value = answer_from_json(kind, j.at("value"));
  if (j.contains("alternatives"))
    for (const auto& alt : j.at("alternatives")) t.alternatives.push_back(answer_from_json(kind, alt));
  if (j.contains("metric_values")) {
    if (!j.at("metric_values").is_object()) throw ParseError("metric_values must be an object");
    for (const auto& [gid, v] : j.at("metric_values").items()) {
      if (!v.is_number()) throw ParseError("metric values must be numbers");
      t.metric_values[gid] = v.get<double>();
    }
  }
  t.tie = j.value("tie", false);
  return t;
}

nlohmann::ordered_json instance_to_json(const TaskInstance& inst, bool with_ground_truth) {
  nlohmann::ordered_json j;
  j["instance_id"] = inst.instance_id;
  j["template_id"] = inst.template_id;
  j["category"] = to_string(inst.category);
  j["answer_kind"] = to_string(inst.answer_kind);
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : inst.bindings)
    std::visit([&](const auto& v) { j["parameters"][name] = v; }, value);
  j["stimulus"] = {{"graph", inst.stimulus.graph}, {"layout", inst.stimulus.layout}};
  j["prompt"] = inst.prompt;
  j["descriptor"] = inst.descriptor.to_json();
  if (with_ground_truth) j["ground_truth"] = ground_truth_to_json(inst.answer_kind, inst.ground_truth);
  return j;
}

TaskInstance instance_from_json(const nlohmann::json& j) {
  try {
    TaskInstance inst;
    inst.instance_id = j.at("instance_id").get<std::string>();
    inst.template_id = j.at("template_id").get<std::string>();
    const TaskTemplate& t = find_template(inst.template_id);
    inst.category = t.category;
    inst.answer_kind = parse_answer_kind(j.at("answer_kind").get<std::string>());
    if (inst.answer_kind != t.answer_kind)
      throw ValidationError("instance " + inst.instance_id + " has the wrong answer kind");
    const auto& params = j.at("parameters");
    for (const auto& slot : t.parameters) {
      if (!params.contains(slot.name))
        throw ValidationError("instance " + inst.instance_id + " lacks parameter " + slot.name);
      const auto& v = params.at(slot.name);
      if (v.is_number_integer()) inst.bindings.emplace_back(slot.name, v.get<std::int64_t>());
      else inst.bindings.emplace_back(slot.name, v.get<std::string>());
    }
    inst.stimulus.graph = j.at("stimulus").at("graph").get<std::string>();
    inst.stimulus.layout = j.at("stimulus").at("layout").get<std::string>();
    inst.prompt = j.at("prompt").get<std::string>();
    inst.descriptor = TaskDescriptor::from_json(j.at("descriptor"));
    if (j.contains("ground_truth"))
      inst.ground_truth = ground_truth_from_json(inst.answer_kind, j.at("ground_truth"));
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed task instance: ") + e.what());
  } catch (const NotFound& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace cgraph
