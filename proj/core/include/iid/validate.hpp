#pragma once

#include <string>
#include <vector>

#include "iid/diagram.hpp"

namespace iid {

enum class IssueCode {
  DuplicateNodeId,
  DuplicateOutcomeLabel,
  TooFewOutcomes,
  UnknownParent,
  DuplicateParent,
  ParentCardMismatch,
  MissingContext,
  UnmatchedContext,
  WrongVectorArity,
  NonFiniteBound,
  NegativeBound,
  SumExceedsOne,
  Cycle,
};

struct ValidationIssue {
  IssueCode code;
  NodeId node;  // empty for diagram-level issues such as cycles
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  /// One line per issue.
  std::string to_string() const;
};

/// Checks every structural and numerical invariant of the diagram: unique
/// node ids, outcome spaces of size >= 2 with unique labels, known and
/// non-repeated parents, a complete context set per table, entry arity,
/// nonnegative finite bounds with per-context sums at most 1 + kValidateEps,
/// and acyclicity. Violations are reported as data; nothing throws.
ValidationReport validate_diagram(const InfluenceDiagram& d);

}  // namespace iid
