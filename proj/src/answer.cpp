#include "cgraph/answer.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "cgraph/error.hpp"

namespace cgraph {

namespace {

constexpr std::pair<AnswerKind, std::string_view> kKindNames[] = {
    {AnswerKind::Boolean, "boolean"},          {AnswerKind::Integer, "integer"},
    {AnswerKind::GroupId, "group-id"},         {AnswerKind::GroupIdSet, "group-id-set"},
    {AnswerKind::GroupIdList, "group-id-list"}, {AnswerKind::NodeId, "node-id"},
    {AnswerKind::Pair, "pair"},
};

bool is_list_kind(AnswerKind k) {
  return k == AnswerKind::GroupIdSet || k == AnswerKind::GroupIdList || k == AnswerKind::Pair;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void check_id(const std::string& id) {
  if (id.empty()) throw ParseError("empty id in answer");
  for (char c : id)
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '{' || c == '}' ||
        c == '[' || c == ']')
      throw ParseError("invalid character in answer id: " + id);
}

}  // namespace

const char* to_string(AnswerKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name.data();
  return "?";
}

AnswerKind parse_answer_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames)
    if (name == text) return k;
  throw ParseError("unknown answer kind: " + std::string(text));
}

AnswerValue normalize_answer(AnswerKind kind, AnswerValue value) {
  switch (kind) {
    case AnswerKind::Boolean:
      if (!std::holds_alternative<bool>(value)) throw ParseError("expected a yes/no answer");
      return value;
    case AnswerKind::Integer:
      if (!std::holds_alternative<std::int64_t>(value)) throw ParseError("expected an integer answer");
      return value;
    case AnswerKind::GroupId:
    case AnswerKind::NodeId:
      if (!std::holds_alternative<std::string>(value)) throw ParseError("expected a single id");
      check_id(std::get<std::string>(value));
      return value;
    case AnswerKind::GroupIdSet:
    case AnswerKind::GroupIdList:
    case AnswerKind::Pair: {
      auto* ids = std::get_if<std::vector<std::string>>(&value);
      if (!ids) throw ParseError("expected a list of ids");
      for (const auto& id : *ids) check_id(id);
      if (kind != AnswerKind::GroupIdList) {
        std::sort(ids->begin(), ids->end());
        ids->erase(std::unique(ids->begin(), ids->end()), ids->end());
      }
      if (kind == AnswerKind::Pair && (ids->empty() || ids->size() > 2))
        throw ParseError("a pair answer names one or two groups");
      return value;
    }
  }
  return value;
}

std::string format_answer(AnswerKind kind, const AnswerValue& raw) {
  AnswerValue value = normalize_answer(kind, raw);
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "yes" : "no";
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  std::string out;
  for (const auto& id : std::get<std::vector<std::string>>(value)) {
    if (!out.empty()) out += ' ';
    out += id;
  }
  return out;
}

AnswerValue parse_answer_text(AnswerKind kind, std::string_view text) {
  text = trim(text);
  switch (kind) {
    case AnswerKind::Boolean: {
      std::string lower(text);
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (lower == "yes" || lower == "true") return true;
      if (lower == "no" || lower == "false") return false;
      throw ParseError("expected yes or no, got '" + std::string(text) + "'");
    }
    case AnswerKind::Integer: {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("expected an integer, got '" + std::string(text) + "'");
      return v;
    }
    case AnswerKind::GroupId:
    case AnswerKind::NodeId:
      return normalize_answer(kind, std::string(text));
    default:
      break;
  }

  if (!text.empty() && (text.front() == '{' || text.front() == '[')) {
    char close = text.front() == '{' ? '}' : ']';
    if (text.size() < 2 || text.back() != close)
      throw ParseError("malformed set syntax: '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
  } else if (!text.empty() && (text.back() == '}' || text.back() == ']')) {
    throw ParseError("malformed set syntax: '" + std::string(text) + "'");
  }
  std::vector<std::string> ids;
  if (text.find(',') != std::string_view::npos) {
    for (std::size_t pos = 0;;) {
      auto comma = text.find(',', pos);
      auto part = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
      if (part.empty()) throw ParseError("malformed set syntax: empty element");
      ids.emplace_back(part);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      std::size_t start = pos;
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos > start) ids.emplace_back(text.substr(start, pos - start));
    }
  }
  return normalize_answer(kind, std::move(ids));
}

nlohmann::json answer_to_json(AnswerKind kind, const AnswerValue& raw) {
  AnswerValue value = normalize_answer(kind, raw);
  if (const auto* b = std::get_if<bool>(&value)) return *b;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  return std::get<std::vector<std::string>>(value);
}

AnswerValue answer_from_json(AnswerKind kind, const nlohmann::json& j) {
  if (j.is_string()) return parse_answer_text(kind, j.get<std::string>());
  switch (kind) {
    case AnswerKind::Boolean:
      if (j.is_boolean()) return j.get<bool>();
      break;
    case AnswerKind::Integer:
      if (j.is_number_integer()) return j.get<std::int64_t>();
      break;
    default:
      if (is_list_kind(kind) && j.is_array()) {
        std::vector<std::string> ids;
        for (const auto& item : j) {
          if (!item.is_string()) throw ParseError("list answers hold id strings");
          ids.push_back(item.get<std::string>());
        }
        return normalize_answer(kind, std::move(ids));
      }
      break;
  }
  throw ParseError(std::string("answer does not match kind ") + to_string(kind));
}

}  // namespace cgraph
