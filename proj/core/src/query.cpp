#include "iid/query.hpp"

#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "iid/errors.hpp"
#include "iid/transforms.hpp"

namespace iid {

std::string to_string(const TransformStep& step) {
  switch (step.kind) {
    case StepKind::PruneBarren:
      return "prune " + step.node;
    case StepKind::RemoveNode:
      return "remove " + step.node + " into " + step.other;
    case StepKind::ReverseArc:
      return "reverse " + step.node + " -> " + step.other;
  }
  return "?";
}

namespace {

// Evidence resolved to outcome indices, keyed by node id.
using EvidenceMap = std::unordered_map<NodeId, int>;

EvidenceMap resolve_evidence(const InfluenceDiagram& d, const Query& q) {
  EvidenceMap ev;
  for (const auto& [node, label] : q.evidence) {
    if (!d.contains(node)) {
      throw PreconditionError("evidence names unknown node '" + node + "'");
    }
    if (node == q.target) {
      throw PreconditionError("the target node '" + node +
                              "' cannot also carry evidence");
    }
    const auto idx = d.node(node).space.index_of(label);
    if (!idx) {
      throw PreconditionError("node '" + node + "' has no outcome '" + label +
                              "'");
    }
    if (!ev.emplace(node, *idx).second) {
      throw PreconditionError("duplicate evidence for node '" + node + "'");
    }
  }
  return ev;
}

// Scalars recomputed when y is marginalized into x.
long long removal_cost(const InfluenceDiagram& d, const NodeId& y,
                       const NodeId& x) {
  long long contexts = 1;
  for (const auto& p : partition_predecessors(d, y, x).merged()) {
    contexts *= d.node(p).space.size();
  }
  return contexts * d.node(x).space.size();
}

// Scalars recomputed when the arc y -> x is reversed: x's new table plus
// y's, which gains x as an extra predecessor.
long long reversal_cost(const InfluenceDiagram& d, const NodeId& y,
                        const NodeId& x) {
  const long long x_arity = d.node(x).space.size();
  const long long y_arity = d.node(y).space.size();
  long long contexts = 1;
  for (const auto& p : partition_predecessors(d, y, x).merged()) {
    contexts *= d.node(p).space.size();
  }
  return contexts * x_arity + contexts * x_arity * y_arity;
}

struct PlanOutcome {
  InfluenceDiagram diagram;
  std::vector<TransformStep> log;
};

PlanOutcome run_plan(const InfluenceDiagram& d, const Query& q) {
  validate_query(d, q);
  const EvidenceMap ev = resolve_evidence(d, q);
  const auto observed = [&ev](const NodeId& id) { return ev.count(id) > 0; };

  std::vector<NodeId> keep;
  keep.push_back(q.target);
  for (const auto& [node, label] : q.evidence) keep.push_back(node);

  PlanOutcome out;
  out.diagram = d;

  // Every reversal consumes an unobserved->observed arc that can only come
  // back after the tail is deleted, and deletions are monotone, so the loop
  // finishes within size^2 + size steps; the cap is pure defence.
  const long long n0 = d.size();
  const long long cap = n0 * n0 + 2 * n0 + 16;
  for (long long iter = 0; iter <= cap; ++iter) {
    out.diagram = prune_barren(out.diagram, keep, &out.log);

    bool clean = true;
    for (const auto& node : out.diagram.nodes()) {
      const NodeId& id = node.id();
      if (id != q.target && !observed(id)) {
        clean = false;
        break;
      }
      if (observed(id)) {
        for (const auto& p : out.diagram.parents(id)) {
          if (!observed(p)) {
            clean = false;
            break;
          }
        }
      }
      if (!clean) break;
    }
    if (clean) return out;

    std::optional<TransformStep> best;
    long long best_cost = 0;
    const auto consider = [&](long long cost, TransformStep step) {
      if (!best || cost < best_cost) {
        best = std::move(step);
        best_cost = cost;
      }
    };

    for (const auto& node : out.diagram.nodes()) {
      const NodeId& id = node.id();
      if (id == q.target || observed(id)) continue;
      const auto succ = out.diagram.successors(id);
      if (succ.size() != 1) continue;
      consider(removal_cost(out.diagram, id, succ.front()),
               {StepKind::RemoveNode, id, succ.front()});
    }
    for (const auto& node : out.diagram.nodes()) {
      const NodeId& id = node.id();
      if (!observed(id)) continue;
      for (const auto& p : out.diagram.parents(id)) {
        if (observed(p)) continue;
        if (has_other_directed_path(out.diagram, p, id)) continue;
        consider(reversal_cost(out.diagram, p, id),
                 {StepKind::ReverseArc, p, id});
      }
    }

    if (!best) {
      throw PreconditionError(
          "query on '" + q.target +
          "' is stuck: no removable node and no reversible evidence arc");
    }
    out.diagram = apply_step(out.diagram, *best);
    out.log.push_back(*best);
  }
  throw PreconditionError("query planning exceeded its step budget");
}

}  // namespace

void validate_query(const InfluenceDiagram& d, const Query& q) {
  if (!d.contains(q.target)) {
    throw PreconditionError("target names unknown node '" + q.target + "'");
  }
  resolve_evidence(d, q);
}

InfluenceDiagram prune_barren(const InfluenceDiagram& d,
                              const std::vector<NodeId>& keep,
                              std::vector<TransformStep>* log) {
  const std::unordered_set<NodeId> kept(keep.begin(), keep.end());
  InfluenceDiagram work = d;
  bool removed = true;
  while (removed) {
    removed = false;
    for (const auto& node : work.nodes()) {
      // Copy: reassigning `work` below frees the node this id lives in.
      const NodeId id = node.id();
      if (kept.count(id) > 0) continue;
      if (!work.successors(id).empty()) continue;
      work = work.without_node(id);
      if (log != nullptr) {
        log->push_back({StepKind::PruneBarren, id, {}});
      }
      removed = true;
      break;  // successor sets changed; rescan from the top
    }
  }
  return work;
}

std::vector<TransformStep> plan(const InfluenceDiagram& d, const Query& q) {
  return run_plan(d, q).log;
}

InfluenceDiagram apply_step(const InfluenceDiagram& d,
                            const TransformStep& step) {
  switch (step.kind) {
    case StepKind::PruneBarren:
      if (!d.successors(step.node).empty()) {
        throw PreconditionError("cannot prune '" + step.node +
                                "': it still has successors");
      }
      return d.without_node(step.node);
    case StepKind::RemoveNode:
      return remove_node(d, step.node);
    case StepKind::ReverseArc:
      return reverse_arc(d, step.node, step.other);
  }
  throw PreconditionError("unknown step kind");
}

QueryResult answer(const InfluenceDiagram& d, const Query& q) {
  PlanOutcome planned = run_plan(d, q);
  const EvidenceMap ev = resolve_evidence(d, q);

  const Node& target = planned.diagram.node(q.target);
  ParentConfig cfg;
  for (const auto& p : target.table.parents()) {
    const auto it = ev.find(p);
    if (it == ev.end()) {
      throw PreconditionError("planner left target '" + q.target +
                              "' conditioned on unobserved node '" + p + "'");
    }
    cfg.assignments.push_back(it->second);
  }
  const BoundVector& entry = target.table.at(cfg);

  QueryResult result;
  result.target = q.target;
  result.outcomes = target.space.outcomes;
  result.range = range(entry);
  result.intervals.reserve(entry.size());
  for (std::size_t i = 0; i < entry.size(); ++i) {
    result.intervals.push_back({entry[i], entry[i] + result.range});
  }
  result.log = std::move(planned.log);
  return result;
}

}  // namespace iid
