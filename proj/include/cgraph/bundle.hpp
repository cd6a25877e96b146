#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cgraph/queries.hpp"
#include "cgraph/tasks.hpp"

namespace cgraph {

/// A stimulus (graph, layout, raster) plus ordered task instances. The answer
/// key is the instances' ground truth; participant views drop it.
struct StudyBundle {
  std::string study_id;
  bool reveal_correctness = false;
  QueryContext context;
  std::vector<TaskInstance> instances;

  const TaskInstance* find_instance(std::string_view instance_id) const;
};

struct BundleBuild {
  StudyBundle bundle;
  /// Templates that could not be instantiated, with the reason.
  std::vector<std::pair<std::string, std::string>> skipped;
};

/// One instance per template id, in the given order; ids look like "03-GO-3".
/// Unknown template ids throw NotFound; inapplicable ones are listed in `skipped`.
BundleBuild build_bundle(const QueryContext& ctx, const std::vector<std::string>& template_ids,
                         std::uint64_t seed, std::string study_id);

nlohmann::ordered_json bundle_to_json(const StudyBundle& bundle, bool with_answer_key);
std::string serialize_bundle(const StudyBundle& bundle, bool with_answer_key = true);

/// Parses and validates a full bundle. The answer key must be present and must
/// agree with ground truth recomputed from the embedded stimulus.
StudyBundle parse_bundle(std::string_view document);
StudyBundle load_bundle(const nlohmann::json& doc);
StudyBundle load_bundle_file(const std::string& path);

}  // namespace cgraph
