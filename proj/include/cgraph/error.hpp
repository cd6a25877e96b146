#pragma once

#include <stdexcept>
#include <string>

namespace cgraph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (graph documents, answers, predicates, bundles).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Reference to an id that does not exist (group, node, edge, template...).
class NotFound : public Error {
 public:
  using Error::Error;
};

/// Violated operation precondition, e.g. identical groups where distinct are required.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The question cannot be answered on this input: missing geometry,
/// undefined metric, or a template that does not apply to the stimulus.
class Inapplicable : public Error {
 public:
  using Error::Error;
};

/// State conflict in the study service (duplicate id, out-of-order answer).
class Conflict : public Error {
 public:
  using Error::Error;
};

}  // namespace cgraph
