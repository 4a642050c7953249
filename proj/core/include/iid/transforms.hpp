#pragma once

#include <vector>

#include "iid/bounds.hpp"
#include "iid/diagram.hpp"

namespace iid {

// --- Bound-propagation kernels -------------------------------------------
//
// Both kernels take a conditional table for a node X given a single
// predecessor Y (one BoundVector over X's outcomes per Y outcome) together
// with Y's own lower bounds, and produce sharp lower bounds for a derived
// quantity.  "Sharp" means the returned bound is attained by some pair of
// distributions consistent with the inputs, so repeated application never
// loosens results beyond what the inputs already allow.
//
// The extremizing distribution for Y concentrates all slack probability
// mass on a single outcome (the "slack outcome"): that outcome is pushed to
// its upper bound while every other outcome stays at its lower bound.  The
// selection rules below pick the slack outcome; when several outcomes are
// tied the one with the lowest index is chosen, and the resulting bound is
// identical for every tied choice.  The *_slack_index / single-bound
// functions expose the selection so callers can probe that invariance.

// Index of the Y outcome that minimizes b(x|y) for the given X outcome.
// Ties resolve to the lowest index.
int marginal_slack_index(const std::vector<BoundVector>& x_given_y,
                         int x_index);

// Lower bound on P(X = x_index) when the Y outcome `slack_y` absorbs the
// slack mass:  b(x|slack_y) * U(slack_y) + sum over other y of b(x|y) * b(y).
double marginal_lower_bound(const std::vector<BoundVector>& x_given_y,
                            const BoundVector& b_y, int x_index, int slack_y);

// Sharp lower bounds on the marginal distribution of X, one entry per X
// outcome, with the slack outcome chosen by marginal_slack_index.
BoundVector marginal_lower_bounds(const std::vector<BoundVector>& x_given_y,
                                  const BoundVector& b_y);

// Index of the Y outcome (distinct from y_index) that maximizes U(x|y),
// i.e. the choice that inflates the denominator most.  Ties resolve to the
// lowest index.  Returns -1 when Y has no other outcome.
int posterior_slack_index(const std::vector<BoundVector>& x_given_y,
                          int x_index, int y_index);

// Lower bound on P(Y = y_index | X = x_index) with an explicit slack
// choice.  With N = b(x|y) * b(y) the bound is
//
//   N / (N + U(x|slack) * U(slack) + sum over remaining y' of U(x|y') * b(y'))
//
// and 0 when the denominator vanishes (the conditional is unconstrained
// there, and 0 is the only lower bound valid in the limit).
double posterior_lower_bound(const std::vector<BoundVector>& x_given_y,
                             const BoundVector& b_y, int x_index, int y_index,
                             int slack_y);

// Sharp lower bounds on the posterior of Y given the observation
// X = x_index, one entry per Y outcome.
BoundVector posterior_lower_bounds(const std::vector<BoundVector>& x_given_y,
                                   const BoundVector& b_y, int x_index);

// --- Structural transformations ------------------------------------------

// The predecessors of two adjacent nodes y and x, split into the groups the
// structural transformations need.  Each group lists node ids in diagram
// declaration order; y and x themselves never appear.
struct PartitionedPredecessors {
  std::vector<NodeId> only_y;  // predecessors of y that x lacks
  std::vector<NodeId> shared;  // predecessors of both
  std::vector<NodeId> only_x;  // predecessors of x (other than y) that y lacks

  // Concatenation only_y ++ shared ++ only_x: the predecessor set of x
  // after y has been removed or the arc reversed.
  std::vector<NodeId> merged() const;
};

PartitionedPredecessors partition_predecessors(const InfluenceDiagram& d,
                                               const NodeId& y,
                                               const NodeId& x);

// Removes node y, whose single successor must be x.  x inherits y's other
// predecessors; its new table is the marginal kernel applied per context
// over the merged predecessor set.  Throws PreconditionError if y is
// missing or its successor set is not exactly {x}.
InfluenceDiagram remove_node(const InfluenceDiagram& d, const NodeId& y);

// Reverses the arc y -> x.  Afterwards x no longer lists y as a
// predecessor (marginal kernel per context) and y lists x first, ahead of
// the merged predecessor set (posterior kernel per context).  Both new
// tables are computed from the original tables.  Throws PreconditionError
// if the arc is absent or another directed path from y to x exists, in
// which case reversal would create a cycle; the message names one such
// path.
InfluenceDiagram reverse_arc(const InfluenceDiagram& d, const NodeId& y,
                             const NodeId& x);

}  // namespace iid
