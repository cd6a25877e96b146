#include "cgraph/bundle.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cgraph/error.hpp"

namespace cgraph {

using nlohmann::json;
using nlohmann::ordered_json;

const TaskInstance* StudyBundle::find_instance(std::string_view instance_id) const {
  for (const auto& inst : instances)
    if (inst.instance_id == instance_id) return &inst;
  return nullptr;
}

BundleBuild build_bundle(const QueryContext& ctx, const std::vector<std::string>& template_ids,
                         std::uint64_t seed, std::string study_id) {
  if (study_id.empty()) throw InvalidArgument("study id must not be empty");
  for (const auto& id : template_ids) find_template(id);

  BundleBuild out;
  out.bundle.study_id = std::move(study_id);
  out.bundle.context = ctx;
  for (std::size_t i = 0; i < template_ids.size(); ++i) {
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%02zu-", i + 1);
    InstanceOptions options;
    options.instance_id = prefix + template_ids[i];
    try {
      out.bundle.instances.push_back(instantiate(template_ids[i], ctx, seed, options));
    } catch (const Inapplicable& e) {
      out.skipped.emplace_back(template_ids[i], e.what());
    }
  }
  return out;
}

ordered_json bundle_to_json(const StudyBundle& b, bool with_answer_key) {
  const QueryContext& ctx = b.context;
  ordered_json doc;
  doc["study_id"] = b.study_id;
  doc["reveal_correctness"] = b.reveal_correctness;
  doc["graph"] = ordered_json::parse(serialize_graph(ctx.g()));
  if (ctx.layout)
    doc["layout"] = ordered_json::parse(serialize_layout(*ctx.layout, ctx.raster.get()));
  doc["instances"] = ordered_json::array();
  for (const auto& inst : b.instances) doc["instances"].push_back(instance_to_json(inst, false));
  if (with_answer_key) {
    auto& key = doc["answer_key"] = ordered_json::object();
    for (const auto& inst : b.instances)
      key[inst.instance_id] = ground_truth_to_json(inst.answer_kind, inst.ground_truth);
  }
  return doc;
}

std::string serialize_bundle(const StudyBundle& b, bool with_answer_key) {
  return bundle_to_json(b, with_answer_key).dump(2) + "\n";
}

StudyBundle load_bundle(const json& doc) {
  if (!doc.is_object()) throw ParseError("bundle must be an object");
  StudyBundle b;
  try {
    b.study_id = doc.at("study_id").get<std::string>();
    b.reveal_correctness = doc.value("reveal_correctness", false);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed bundle header: ") + e.what());
  }
  if (b.study_id.empty()) throw ValidationError("empty study id");
  if (!doc.contains("graph")) throw ValidationError("bundle has no graph");
  if (!doc.contains("instances") || !doc.at("instances").is_array())
    throw ValidationError("bundle has no instance list");
  if (!doc.contains("answer_key") || !doc.at("answer_key").is_object())
    throw ValidationError("bundle has no answer key");

  ClusteredGraph g = load_clustered_graph(doc.at("graph").dump());
  if (doc.contains("layout")) {
    std::string layout_text = doc.at("layout").dump();
    LayoutGeometry layout = load_layout(layout_text, g);
    b.context = QueryContext::with_geometry(std::move(g), std::move(layout),
                                            load_raster_params(layout_text));
  } else {
    b.context = QueryContext::topological(std::move(g));
  }

  const json& key = doc.at("answer_key");
  std::set<std::string> seen;
  for (const auto& item : doc.at("instances")) {
    TaskInstance inst = instance_from_json(item);
    if (!seen.insert(inst.instance_id).second)
      throw ValidationError("duplicate instance id: " + inst.instance_id);
    if (!key.contains(inst.instance_id))
      throw ValidationError("answer key lacks instance " + inst.instance_id);
    inst.ground_truth = ground_truth_from_json(inst.answer_kind, key.at(inst.instance_id));
    GroundTruth expected;
    try {
      expected = recompute_ground_truth(inst, b.context);
    } catch (const Error& e) {
      throw ValidationError("instance " + inst.instance_id + " is ill-posed: " + e.what());
    }
    if (!(expected == inst.ground_truth))
      throw ValidationError("answer key disagrees with the stimulus for " + inst.instance_id);
    b.instances.push_back(std::move(inst));
  }
  for (const auto& [id, _] : key.items())
    if (!seen.count(id)) throw ValidationError("answer key names unknown instance " + id);
  return b;
}

StudyBundle parse_bundle(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed bundle: ") + e.what());
  }
  return load_bundle(doc);
}

StudyBundle load_bundle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bundle(ss.str());
}

}  // namespace cgraph
