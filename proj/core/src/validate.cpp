#include "iid/validate.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace iid {

namespace {

void check_outcome_space(const Node& n, ValidationReport& report) {
  const auto& space = n.space;
  if (space.size() < 2) {
    report.issues.push_back({IssueCode::TooFewOutcomes, n.id(),
                             "node '" + n.id() + "' has " +
                                 std::to_string(space.size()) +
                                 " outcomes; at least 2 are required"});
  }
  std::set<std::string> seen;
  for (const auto& label : space.outcomes) {
    if (!seen.insert(label).second) {
      report.issues.push_back({IssueCode::DuplicateOutcomeLabel, n.id(),
                               "node '" + n.id() +
                                   "' repeats outcome label '" + label + "'"});
    }
  }
}

void check_parents(const InfluenceDiagram& d, const Node& n,
                   ValidationReport& report) {
  std::set<NodeId> seen;
  const auto& parents = n.table.parents();
  const auto& cards = n.table.parent_cards();
  for (std::size_t i = 0; i < parents.size(); ++i) {
    const NodeId& p = parents[i];
    if (!seen.insert(p).second) {
      report.issues.push_back({IssueCode::DuplicateParent, n.id(),
                               "node '" + n.id() + "' lists parent '" + p +
                                   "' more than once"});
    }
    const int pi = d.index_of(p);
    if (pi < 0) {
      report.issues.push_back({IssueCode::UnknownParent, n.id(),
                               "node '" + n.id() + "' lists unknown parent '" +
                                   p + "'"});
      continue;
    }
    const int expected = d.node_at(pi).space.size();
    if (i < cards.size() && cards[i] != expected) {
      report.issues.push_back(
          {IssueCode::ParentCardMismatch, n.id(),
           "table of '" + n.id() + "' sizes parent '" + p + "' at " +
               std::to_string(cards[i]) + " outcomes but '" + p + "' has " +
               std::to_string(expected)});
    }
  }
}

std::string context_label(const Node& n, int flat) {
  const auto cfg = n.table.config_at(flat);
  if (cfg.assignments.empty()) return "<root>";
  std::ostringstream out;
  for (std::size_t i = 0; i < cfg.assignments.size(); ++i) {
    if (i) out << ",";
    out << n.table.parents()[i] << "=" << cfg.assignments[i];
  }
  return out.str();
}

void check_entries(const Node& n, ValidationReport& report) {
  const int contexts = n.table.context_count();
  const auto& entries = n.table.entries();
  if (static_cast<int>(entries.size()) != contexts) {
    report.issues.push_back(
        {IssueCode::MissingContext, n.id(),
         "table of '" + n.id() + "' holds " + std::to_string(entries.size()) +
             " contexts; the parent outcome product has " +
             std::to_string(contexts)});
    return;
  }
  for (int c = 0; c < contexts; ++c) {
    const BoundVector& bv = entries[c];
    if (bv.empty()) {
      report.issues.push_back({IssueCode::MissingContext, n.id(),
                               "table of '" + n.id() +
                                   "' is missing context " +
                                   context_label(n, c)});
      continue;
    }
    if (static_cast<int>(bv.size()) != n.space.size()) {
      report.issues.push_back(
          {IssueCode::WrongVectorArity, n.id(),
           "context " + context_label(n, c) + " of '" + n.id() + "' has " +
               std::to_string(bv.size()) + " bounds for " +
               std::to_string(n.space.size()) + " outcomes"});
      continue;
    }
    bool entries_ok = true;
    for (std::size_t i = 0; i < bv.size(); ++i) {
      if (!std::isfinite(bv[i])) {
        report.issues.push_back({IssueCode::NonFiniteBound, n.id(),
                                 "context " + context_label(n, c) + " of '" +
                                     n.id() + "' has a non-finite bound"});
        entries_ok = false;
      } else if (bv[i] < 0.0) {
        report.issues.push_back(
            {IssueCode::NegativeBound, n.id(),
             "context " + context_label(n, c) + " of '" + n.id() +
                 "' has negative bound " + std::to_string(bv[i]) +
                 " for outcome '" + n.space.outcomes[i] + "'"});
        entries_ok = false;
      }
    }
    if (entries_ok && bv.sum() > 1.0 + kValidateEps) {
      report.issues.push_back({IssueCode::SumExceedsOne, n.id(),
                               "context " + context_label(n, c) + " of '" +
                                   n.id() + "' has bounds summing to " +
                                   std::to_string(bv.sum()) +
                                   " which exceeds 1"});
    }
  }
  for (const auto& key : n.table.unmatched_context_keys()) {
    report.issues.push_back({IssueCode::UnmatchedContext, n.id(),
                             "table of '" + n.id() +
                                 "' has context key '" + key +
                                 "' matching no parent configuration"});
  }
}

// Kahn's algorithm; whatever cannot be topologically ordered lies on a cycle.
void check_acyclic(const InfluenceDiagram& d, ValidationReport& report) {
  const int n = d.size();
  std::vector<int> indegree(n, 0);
  for (const Node& node : d.nodes()) {
    for (const NodeId& p : node.table.parents()) {
      if (d.contains(p)) indegree[d.index_of(node.id())]++;
    }
  }
  std::vector<int> queue;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) queue.push_back(i);
  }
  int ordered = 0;
  while (!queue.empty()) {
    const int cur = queue.back();
    queue.pop_back();
    ++ordered;
    for (const NodeId& succ : d.successors(d.node_at(cur).id())) {
      const int si = d.index_of(succ);
      if (--indegree[si] == 0) queue.push_back(si);
    }
  }
  if (ordered < n) {
    std::ostringstream msg;
    msg << "arc relation contains a cycle among:";
    for (int i = 0; i < n; ++i) {
      if (indegree[i] > 0) msg << " '" << d.node_at(i).id() << "'";
    }
    report.issues.push_back({IssueCode::Cycle, "", msg.str()});
  }
}

}  // namespace

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& issue : issues) out << issue.message << "\n";
  return out.str();
}

ValidationReport validate_diagram(const InfluenceDiagram& d) {
  ValidationReport report;

  std::set<NodeId> ids;
  for (const Node& n : d.nodes()) {
    if (!ids.insert(n.id()).second) {
      report.issues.push_back({IssueCode::DuplicateNodeId, n.id(),
                               "node id '" + n.id() + "' is declared twice"});
    }
  }

  for (const Node& n : d.nodes()) {
    check_outcome_space(n, report);
    check_parents(d, n, report);
    check_entries(n, report);
  }
  check_acyclic(d, report);
  return report;
}

}  // namespace iid
