#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "iid/bounds.hpp"

namespace iid {

using NodeId = std::string;

/// Ordered outcome labels for one node. The position of a label is the
/// canonical outcome index used by every bound vector and context key.
struct OutcomeSpace {
  NodeId node_id;
  std::vector<std::string> outcomes;

  int size() const { return static_cast<int>(outcomes.size()); }
  std::optional<int> index_of(const std::string& label) const;
};

/// One joint assignment of outcome indices to a table's parents, in the
/// table's parent order.
struct ParentConfig {
  std::vector<int> assignments;

  friend bool operator==(const ParentConfig&, const ParentConfig&) = default;
};

/// Conditional lower bounds for one node: one BoundVector per combination of
/// parent outcomes. Contexts are stored densely in row-major order with the
/// first parent varying slowest. Structural defects tolerated here (missing
/// or extra contexts, wrong arities) are surfaced by validate_diagram rather
/// than at construction, so a damaged file can still be loaded and reported.
class LowerBoundTable {
 public:
  LowerBoundTable() = default;
  LowerBoundTable(NodeId node, std::vector<NodeId> parents,
                  std::vector<int> parent_cards,
                  std::vector<BoundVector> entries);

  /// Table for a node with no parents: a single root context.
  static LowerBoundTable root(NodeId node, BoundVector marginal);

  const NodeId& node() const { return node_; }
  const std::vector<NodeId>& parents() const { return parents_; }
  const std::vector<int>& parent_cards() const { return parent_cards_; }

  /// Number of contexts in the full Cartesian product of parent outcomes.
  int context_count() const;

  int context_index(const ParentConfig& cfg) const;
  ParentConfig config_at(int flat_index) const;

  const BoundVector& at(const ParentConfig& cfg) const;
  const BoundVector& at_index(int flat_index) const;

  const std::vector<BoundVector>& entries() const { return entries_; }

  /// Context keys from the input file that did not match any parent
  /// configuration. Kept so validation can report them.
  const std::vector<std::string>& unmatched_context_keys() const {
    return unmatched_keys_;
  }
  void add_unmatched_context_key(std::string key);

 private:
  NodeId node_;
  std::vector<NodeId> parents_;
  std::vector<int> parent_cards_;
  std::vector<BoundVector> entries_;  // empty BoundVector marks a missing context
  std::vector<std::string> unmatched_keys_;
};

/// One chance node: its outcome space and its conditional lower bounds.
struct Node {
  OutcomeSpace space;
  LowerBoundTable table;

  const NodeId& id() const { return space.node_id; }
};

/// An acyclic directed graph of chance nodes, each holding lower bounds on
/// its conditional distribution given its parents. Arcs are implied by the
/// tables' parent lists. A validated diagram is immutable; transformations
/// produce new diagrams, so any number of readers may share one.
class InfluenceDiagram {
 public:
  InfluenceDiagram() = default;
  explicit InfluenceDiagram(std::vector<Node> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Node>& nodes() const { return nodes_; }

  bool contains(const NodeId& id) const;
  /// Declaration index of a node, or -1 when absent.
  int index_of(const NodeId& id) const;
  /// Throws PreconditionError when the node is unknown.
  const Node& node(const NodeId& id) const;
  const Node& node_at(int index) const { return nodes_[index]; }

  /// Parents of a node, in its table's parent order.
  const std::vector<NodeId>& parents(const NodeId& id) const;
  /// Nodes that list `id` as a parent, in declaration order.
  std::vector<NodeId> successors(const NodeId& id) const;
  bool has_arc(const NodeId& from, const NodeId& to) const;

  InfluenceDiagram with_node_replaced(Node replacement) const;
  InfluenceDiagram without_node(const NodeId& id) const;

 private:
  std::vector<Node> nodes_;  // declaration order
  std::unordered_map<std::string, int> index_;
};

/// True iff a directed path from `from` to `to` exists that does not use the
/// direct arc from->to. Throws PreconditionError on unknown identifiers.
bool has_other_directed_path(const InfluenceDiagram& d, const NodeId& from,
                             const NodeId& to);

/// Witness for has_other_directed_path: the node sequence of one such path
/// (starting at `from`, ending at `to`), or nullopt when none exists.
std::optional<std::vector<NodeId>> find_other_directed_path(
    const InfluenceDiagram& d, const NodeId& from, const NodeId& to);

}  // namespace iid
