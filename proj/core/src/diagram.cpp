#include "iid/diagram.hpp"

#include <algorithm>
#include <functional>

#include "iid/errors.hpp"

namespace iid {

std::optional<int> OutcomeSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

LowerBoundTable::LowerBoundTable(NodeId node, std::vector<NodeId> parents,
                                 std::vector<int> parent_cards,
                                 std::vector<BoundVector> entries)
    : node_(std::move(node)),
      parents_(std::move(parents)),
      parent_cards_(std::move(parent_cards)),
      entries_(std::move(entries)) {}

LowerBoundTable LowerBoundTable::root(NodeId node, BoundVector marginal) {
  std::vector<BoundVector> entries;
  entries.push_back(std::move(marginal));
  return LowerBoundTable(std::move(node), {}, {}, std::move(entries));
}

int LowerBoundTable::context_count() const {
  int n = 1;
  for (int c : parent_cards_) n *= c;
  return n;
}

int LowerBoundTable::context_index(const ParentConfig& cfg) const {
  if (cfg.assignments.size() != parent_cards_.size()) {
    throw PreconditionError("parent configuration arity " +
                            std::to_string(cfg.assignments.size()) +
                            " does not match table for node '" + node_ +
                            "' with " + std::to_string(parent_cards_.size()) +
                            " parents");
  }
  int flat = 0;
  for (std::size_t i = 0; i < parent_cards_.size(); ++i) {
    const int a = cfg.assignments[i];
    if (a < 0 || a >= parent_cards_[i]) {
      throw PreconditionError("outcome index " + std::to_string(a) +
                              " out of range for parent '" + parents_[i] +
                              "' of node '" + node_ + "'");
    }
    flat = flat * parent_cards_[i] + a;
  }
  return flat;
}

ParentConfig LowerBoundTable::config_at(int flat_index) const {
  ParentConfig cfg;
  cfg.assignments.resize(parent_cards_.size());
  for (int i = static_cast<int>(parent_cards_.size()) - 1; i >= 0; --i) {
    cfg.assignments[i] = flat_index % parent_cards_[i];
    flat_index /= parent_cards_[i];
  }
  return cfg;
}

const BoundVector& LowerBoundTable::at(const ParentConfig& cfg) const {
  return entries_.at(context_index(cfg));
}

const BoundVector& LowerBoundTable::at_index(int flat_index) const {
  return entries_.at(flat_index);
}

void LowerBoundTable::add_unmatched_context_key(std::string key) {
  unmatched_keys_.push_back(std::move(key));
}

InfluenceDiagram::InfluenceDiagram(std::vector<Node> nodes)
    : nodes_(std::move(nodes)) {
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    index_.emplace(nodes_[i].id(), i);  // first declaration wins on duplicates
  }
}

bool InfluenceDiagram::contains(const NodeId& id) const {
  return index_.count(id) > 0;
}

int InfluenceDiagram::index_of(const NodeId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

const Node& InfluenceDiagram::node(const NodeId& id) const {
  const int i = index_of(id);
  if (i < 0) throw PreconditionError("unknown node '" + id + "'");
  return nodes_[i];
}

const std::vector<NodeId>& InfluenceDiagram::parents(const NodeId& id) const {
  return node(id).table.parents();
}

std::vector<NodeId> InfluenceDiagram::successors(const NodeId& id) const {
  if (!contains(id)) throw PreconditionError("unknown node '" + id + "'");
  std::vector<NodeId> out;
  for (const Node& n : nodes_) {
    const auto& ps = n.table.parents();
    if (std::find(ps.begin(), ps.end(), id) != ps.end()) out.push_back(n.id());
  }
  return out;
}

bool InfluenceDiagram::has_arc(const NodeId& from, const NodeId& to) const {
  const auto& ps = node(to).table.parents();
  return std::find(ps.begin(), ps.end(), from) != ps.end();
}

InfluenceDiagram InfluenceDiagram::with_node_replaced(Node replacement) const {
  std::vector<Node> copy = nodes_;
  const int i = index_of(replacement.id());
  if (i < 0) {
    throw PreconditionError("cannot replace unknown node '" +
                            replacement.id() + "'");
  }
  copy[i] = std::move(replacement);
  return InfluenceDiagram(std::move(copy));
}

InfluenceDiagram InfluenceDiagram::without_node(const NodeId& id) const {
  const int i = index_of(id);
  if (i < 0) throw PreconditionError("cannot erase unknown node '" + id + "'");
  std::vector<Node> copy = nodes_;
  copy.erase(copy.begin() + i);
  return InfluenceDiagram(std::move(copy));
}

std::optional<std::vector<NodeId>> find_other_directed_path(
    const InfluenceDiagram& d, const NodeId& from, const NodeId& to) {
  if (!d.contains(from)) throw PreconditionError("unknown node '" + from + "'");
  if (!d.contains(to)) throw PreconditionError("unknown node '" + to + "'");

  // Depth-first over arcs, skipping the direct arc from->to at the first hop.
  std::vector<NodeId> path{from};
  std::vector<char> visited(d.size(), 0);
  std::function<bool(const NodeId&, bool)> dfs = [&](const NodeId& cur,
                                                     bool first_hop) -> bool {
    for (const NodeId& next : d.successors(cur)) {
      if (first_hop && next == to) continue;
      if (next == to) {
        path.push_back(next);
        return true;
      }
      const int ni = d.index_of(next);
      if (visited[ni]) continue;
      visited[ni] = 1;
      path.push_back(next);
      if (dfs(next, false)) return true;
      path.pop_back();
    }
    return false;
  };
  if (dfs(from, true)) return path;
  return std::nullopt;
}

bool has_other_directed_path(const InfluenceDiagram& d, const NodeId& from,
                             const NodeId& to) {
  return find_other_directed_path(d, from, to).has_value();
}

}  // namespace iid
