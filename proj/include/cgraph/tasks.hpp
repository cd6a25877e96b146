#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cgraph/answer.hpp"
#include "cgraph/queries.hpp"

namespace cgraph {

enum class TaskCategory { GroupOnly, GroupNode, GroupLink, GroupNetwork };
const char* to_string(TaskCategory c);

enum class ParamKind { Group, Node, Integer, Predicate, Direction };
const char* to_string(ParamKind k);

struct ParamSlot {
  std::string name;
  ParamKind kind;
};

// ---------------------------------------------------------------------------
// why / how / what descriptors

enum class QueryLevel { Identify, Compare, Summarize };
enum class SearchKind { Lookup, Locate, Browse, Explore };

struct Knowledge {
  bool target_known = true;
  bool location_known = false;
};

/// Search kind implied by what the participant knows about the target.
SearchKind search_kind_for(Knowledge k);

struct TaskDescriptor {
  struct Why {
    std::string goal = "consume";  // consume | produce
    bool discover = true;
    SearchKind search = SearchKind::Locate;
    QueryLevel query = QueryLevel::Identify;

    friend bool operator==(const Why&, const Why&) = default;
  } why;
  struct What {
    std::string inputs;
    std::string outputs;

    friend bool operator==(const What&, const What&) = default;
  } what;
  std::vector<std::string> how;

  /// e.g. "Discover + Locate + Identify"
  std::string why_summary() const;
  /// e.g. "Derive + Select"
  std::string how_summary() const;

  nlohmann::ordered_json to_json() const;
  static TaskDescriptor from_json(const nlohmann::json& j);
  /// Canonical text used for golden comparisons.
  std::string serialize() const;

  friend bool operator==(const TaskDescriptor&, const TaskDescriptor&) = default;
};

// ---------------------------------------------------------------------------
// templates

struct TaskTemplate {
  std::string id;  // GO-1 .. GO-14, GN-1 .. GN-5, GL-1 .. GL-5, GX-1 .. GX-5
  TaskCategory category;
  std::string prompt_pattern;
  std::vector<ParamSlot> parameters;
  AnswerKind answer_kind;
  Knowledge default_knowledge;
  TaskDescriptor default_descriptor;
  /// The group-level query that computes the ground truth.
  std::string operation;
  /// Interpretation choices a study designer should be aware of.
  std::string note;
};

/// The 29 built-in templates in taxonomy order.
const std::vector<TaskTemplate>& list_templates();
const TaskTemplate& find_template(std::string_view id);

TaskDescriptor describe(std::string_view template_id, Knowledge knowledge);

// ---------------------------------------------------------------------------
// instances

using ParamValue = std::variant<std::string, std::int64_t>;
using Bindings = std::vector<std::pair<std::string, ParamValue>>;

struct GroundTruth {
  AnswerValue value;
  /// Other answers accepted as correct (any articulation group, any shortest path...).
  std::vector<AnswerValue> alternatives;
  /// Per-group metric values for extremal answers; equal values are interchangeable.
  std::map<std::string, double> metric_values;
  bool tie = false;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct StimulusRef {
  std::string graph;
  std::string layout;

  friend bool operator==(const StimulusRef&, const StimulusRef&) = default;
};

struct TaskInstance {
  std::string instance_id;
  std::string template_id;
  TaskCategory category = TaskCategory::GroupOnly;
  AnswerKind answer_kind = AnswerKind::Boolean;
  Bindings bindings;
  StimulusRef stimulus;
  std::string prompt;
  GroundTruth ground_truth;
  TaskDescriptor descriptor;

  friend bool operator==(const TaskInstance&, const TaskInstance&) = default;
};

struct InstanceOptions {
  std::string instance_id;
  StimulusRef stimulus{"graph", "layout"};
  std::optional<Knowledge> knowledge;
  /// Replaces the rendered prompt; ground truth is unaffected.
  std::optional<std::string> prompt_override;
};

/// Binds parameters from `seed`, rejecting ill-posed bindings (identical
/// groups, singleton density, disconnected pairs...). Throws Inapplicable
/// when the stimulus cannot host the template at all.
TaskInstance instantiate(std::string_view template_id, const QueryContext& ctx,
                         std::uint64_t seed, const InstanceOptions& options = {});

/// Binds explicit parameters (slot name -> value). Throws InvalidArgument /
/// Inapplicable when the binding is ill-posed.
TaskInstance bind(std::string_view template_id, const QueryContext& ctx, const Bindings& bindings,
                  const InstanceOptions& options = {});

/// Recomputes the ground truth of an instance from its stimulus.
GroundTruth recompute_ground_truth(const TaskInstance& instance, const QueryContext& ctx);

/// Ordered templates sharing one stimulus.
struct MacroTask {
  std::string id;
  std::vector<std::string> template_ids;
};

std::vector<TaskInstance> instantiate_macro(const MacroTask& macro, const QueryContext& ctx,
                                            std::uint64_t seed,
                                            const StimulusRef& stimulus = {"graph", "layout"});

struct ScoreResult {
  bool correct = false;
  std::string normalized_answer;
  /// Set answers only: expected ids not given, and given ids not expected.
  std::vector<std::string> missing;
  std::vector<std::string> extra;
};

/// Throws ParseError when the answer does not fit the instance's answer kind.
ScoreResult score(const TaskInstance& instance, const AnswerValue& answer);

std::string format_param(const ParamValue& v);
nlohmann::ordered_json instance_to_json(const TaskInstance& instance, bool with_ground_truth);
nlohmann::ordered_json ground_truth_to_json(AnswerKind kind, const GroundTruth& truth);
GroundTruth ground_truth_from_json(AnswerKind kind, const nlohmann::json& j);
/// Parses the participant-facing part; ground truth is left empty.
TaskInstance instance_from_json(const nlohmann::json& j);

}  // namespace cgraph
