#pragma once

#include <string>
#include <utility>
#include <vector>

#include "iid/bounds.hpp"
#include "iid/diagram.hpp"

namespace iid {

/// A request for the interval distribution of one target node, optionally
/// conditioned on observed outcomes of other nodes.
struct Query {
  NodeId target;
  /// (node, outcome label) pairs; at most one observation per node.
  std::vector<std::pair<NodeId, std::string>> evidence;
};

enum class StepKind { PruneBarren, RemoveNode, ReverseArc };

/// One entry of the transformation log. `node` is the node pruned or
/// removed; for ReverseArc it is the arc's tail and `other` the head (the
/// observed node). RemoveNode records the absorbing successor in `other`.
struct TransformStep {
  StepKind kind;
  NodeId node;
  NodeId other;

  friend bool operator==(const TransformStep&, const TransformStep&) = default;
};

std::string to_string(const TransformStep& step);

/// Interval answer for one query: per-outcome probability intervals for the
/// target, all sharing the common width `range`, plus the sequence of
/// transformations that produced them.
struct QueryResult {
  NodeId target;
  std::vector<std::string> outcomes;
  std::vector<ProbInterval> intervals;
  double range = 0.0;
  std::vector<TransformStep> log;
};

/// Checks that the query is well-posed against the diagram: the target
/// exists, every evidence node exists and is distinct from the target and
/// from other evidence nodes, and every observed outcome label belongs to
/// its node. Throws PreconditionError otherwise.
void validate_query(const InfluenceDiagram& d, const Query& q);

/// Repeatedly deletes nodes that have no successors and are not listed in
/// `keep`; such nodes cannot influence anything retained. Appends one
/// PruneBarren entry per deletion to `log` when it is non-null.
InfluenceDiagram prune_barren(const InfluenceDiagram& d,
                              const std::vector<NodeId>& keep,
                              std::vector<TransformStep>* log = nullptr);

/// Computes the transformation sequence `answer` would perform, without
/// the final interval read-off.
std::vector<TransformStep> plan(const InfluenceDiagram& d, const Query& q);

/// Replays one logged step on a diagram.
InfluenceDiagram apply_step(const InfluenceDiagram& d,
                            const TransformStep& step);

/// Answers the query on a validated diagram.
///
/// The engine greedily prunes barren nodes, removes marginalizable nodes,
/// and reverses arcs from unobserved parents into observed nodes until only
/// the target and the evidence nodes remain and every evidence node is
/// conditioned solely on other evidence. At that point the joint factors so
/// that the target's table row at the observed context is exactly the
/// interval posterior, which is read off directly. Each candidate step is
/// costed by the number of bound values it would recompute; the cheapest is
/// applied, with ties going to the earliest candidate in declaration order
/// (removals enumerate before reversals).
QueryResult answer(const InfluenceDiagram& d, const Query& q);

}  // namespace iid
