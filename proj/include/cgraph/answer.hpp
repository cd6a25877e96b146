#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cgraph {

enum class AnswerKind { Boolean, Integer, GroupId, GroupIdSet, GroupIdList, NodeId, Pair };

const char* to_string(AnswerKind kind);
AnswerKind parse_answer_kind(std::string_view text);

/// Boolean, integer, a single id, or a list of ids (sets and pairs are kept
/// sorted; lists keep their order).
using AnswerValue = std::variant<bool, std::int64_t, std::string, std::vector<std::string>>;

/// Puts a value in the canonical form for its kind: sets and pairs sorted and
/// deduplicated. Throws ParseError when the value does not fit the kind.
AnswerValue normalize_answer(AnswerKind kind, AnswerValue value);

/// Canonical text: "yes"/"no", decimal integers, ids, and space-separated id
/// lists (sorted for sets and pairs).
std::string format_answer(AnswerKind kind, const AnswerValue& value);

/// Accepts either the canonical text form or, for list kinds, braces or
/// brackets with comma or space separators: "{A, B}", "[A C D]".
AnswerValue parse_answer_text(AnswerKind kind, std::string_view text);

nlohmann::json answer_to_json(AnswerKind kind, const AnswerValue& value);
/// Typed JSON (bool, integer, string, array of strings) or a text string.
AnswerValue answer_from_json(AnswerKind kind, const nlohmann::json& j);

}  // namespace cgraph
