#include "cgraph/predicate.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "cgraph/error.hpp"

namespace cgraph {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

const char* op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
    case CompareOp::Exists: return "has";
  }
  return "?";
}

std::string value_text(const Scalar& value) {
  if (const auto* s = std::get_if<std::string>(&value)) {
    bool needs_quotes = s->empty() || *s == "true" || *s == "false" || *s == "max" ||
                        *s == "min" || parse_number(*s).has_value() ||
                        s->find_first_of(" \t\"") != std::string::npos;
    return needs_quotes ? "\"" + *s + "\"" : *s;
  }
  return scalar_to_string(value);
}

}  // namespace

Predicate Predicate::always(bool value) {
  Predicate p;
  p.kind_ = value ? Kind::Always : Kind::Never;
  return p;
}

Predicate Predicate::compare(std::string attribute, CompareOp op, Scalar value) {
  if (attribute.empty()) throw ParseError("predicate attribute name is empty");
  Predicate p;
  p.kind_ = Kind::Compare;
  p.attribute_ = std::move(attribute);
  p.op_ = op;
  p.value_ = std::move(value);
  return p;
}

Predicate Predicate::parse(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "*") return always(true);
  if (text == "false") return always(false);
  if (text.starts_with("has:")) {
    auto name = trim(text.substr(4));
    return compare(std::string(name), CompareOp::Exists, true);
  }

  // Two-character operators first so "<=" is not read as "<".
  static constexpr std::array<std::pair<std::string_view, CompareOp>, 7> kOps{{
      {"==", CompareOp::Eq},
      {"!=", CompareOp::Ne},
      {"<=", CompareOp::Le},
      {">=", CompareOp::Ge},
      {"<", CompareOp::Lt},
      {">", CompareOp::Gt},
      {"=", CompareOp::Eq},
  }};
  std::size_t best = std::string_view::npos;
  std::pair<std::string_view, CompareOp> chosen{"", CompareOp::Eq};
  for (const auto& candidate : kOps) {
    auto pos = text.find(candidate.first);
    if (pos != std::string_view::npos &&
        (best == std::string_view::npos || pos < best ||
         (pos == best && candidate.first.size() > chosen.first.size()))) {
      best = pos;
      chosen = candidate;
    }
  }
  if (best == std::string_view::npos) throw ParseError("predicate has no operator: " + std::string(text));
  auto name = trim(text.substr(0, best));
  auto raw = trim(text.substr(best + chosen.first.size()));
  if (name.empty()) throw ParseError("predicate attribute name is empty");
  if (raw.empty()) throw ParseError("predicate value is empty");

  Predicate p = compare(std::string(name), chosen.second, std::string());
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    p.value_ = std::string(raw.substr(1, raw.size() - 2));
  } else if (raw == "true" || raw == "false") {
    p.value_ = raw == "true";
  } else if (raw == "max" || raw == "min") {
    p.extreme_ = raw == "max" ? Extreme::Max : Extreme::Min;
    p.value_ = 0.0;
  } else if (auto number = parse_number(raw)) {
    p.value_ = *number;
  } else {
    p.value_ = std::string(raw);
  }
  return p;
}

Predicate Predicate::resolved(Scalar value) const {
  Predicate p = *this;
  p.extreme_ = Extreme::None;
  p.value_ = std::move(value);
  return p;
}

bool Predicate::evaluate(const Lookup& lookup) const {
  if (kind_ == Kind::Always) return true;
  if (kind_ == Kind::Never) return false;
  if (extreme_ != Extreme::None)
    throw InvalidArgument("predicate '" + to_string() + "' must be resolved before evaluation");
  auto actual = lookup(attribute_);
  if (!actual) return false;
  if (op_ == CompareOp::Exists) return true;

  bool same_type = actual->index() == value_.index();
  if (op_ == CompareOp::Eq) return same_type && *actual == value_;
  if (op_ == CompareOp::Ne) return !same_type || *actual != value_;

  if (!same_type || std::holds_alternative<bool>(value_))
    throw InvalidArgument("undefined comparison type in predicate '" + to_string() + "'");
  int order = 0;
  if (const auto* d = std::get_if<double>(&value_)) {
    double a = std::get<double>(*actual);
    order = a < *d ? -1 : (a > *d ? 1 : 0);
  } else {
    int c = std::get<std::string>(*actual).compare(std::get<std::string>(value_));
    order = c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  switch (op_) {
    case CompareOp::Lt: return order < 0;
    case CompareOp::Le: return order <= 0;
    case CompareOp::Gt: return order > 0;
    case CompareOp::Ge: return order >= 0;
    default: return false;
  }
}

bool Predicate::evaluate(const AttributeMap& attributes) const {
  return evaluate([&](std::string_view name) -> std::optional<Scalar> {
    auto it = attributes.find(std::string(name));
    if (it == attributes.end()) return std::nullopt;
    return it->second;
  });
}

std::string Predicate::to_string() const {
  if (kind_ == Kind::Always) return "true";
  if (kind_ == Kind::Never) return "false";
  if (op_ == CompareOp::Exists) return "has:" + attribute_;
  std::string value;
  if (extreme_ == Extreme::Max) value = "max";
  else if (extreme_ == Extreme::Min) value = "min";
  else value = value_text(value_);
  return attribute_ + op_text(op_) + value;
}

}  // namespace cgraph
