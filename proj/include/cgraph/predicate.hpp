#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "cgraph/graph.hpp"

namespace cgraph {

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge, Exists };

/// A filter over an attribute map, written as text:
///
///   true | false            constant predicates
///   has:NAME                attribute present
///   NAME OP VALUE           OP one of == = != < <= > >=
///
/// VALUE is read as a boolean (`true`/`false`), a number, the keywords
/// `max`/`min` (resolved against the scanned population before evaluation),
/// a "quoted string", or otherwise a bare string.
class Predicate {
 public:
  enum class Extreme { None, Max, Min };

  static Predicate always(bool value);
  static Predicate compare(std::string attribute, CompareOp op, Scalar value);
  static Predicate parse(std::string_view text);

  bool is_constant() const { return kind_ != Kind::Compare; }
  const std::string& attribute() const { return attribute_; }
  CompareOp op() const { return op_; }
  Extreme extreme() const { return extreme_; }

  /// Replaces a max/min keyword by a concrete value.
  Predicate resolved(Scalar value) const;

  using Lookup = std::function<std::optional<Scalar>(std::string_view)>;

  /// Missing attributes never match. Ordering between values of different
  /// types (or on booleans) throws InvalidArgument.
  bool evaluate(const Lookup& lookup) const;
  bool evaluate(const AttributeMap& attributes) const;

  std::string to_string() const;

 private:
  enum class Kind { Always, Never, Compare };
  Kind kind_ = Kind::Always;
  std::string attribute_;
  CompareOp op_ = CompareOp::Eq;
  Scalar value_;
  Extreme extreme_ = Extreme::None;
};

}  // namespace cgraph
