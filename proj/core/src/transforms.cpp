#include "iid/transforms.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "iid/errors.hpp"

namespace iid {

namespace {

// Arity shared by every row of a conditional table; throws when rows
// disagree or the table is degenerate.
int common_arity(const std::vector<BoundVector>& x_given_y) {
  if (x_given_y.empty()) {
    throw PreconditionError(
        "conditional table must cover at least one predecessor outcome");
  }
  const int arity = static_cast<int>(x_given_y.front().size());
  if (arity == 0) {
    throw PreconditionError("conditional bound vectors must be non-empty");
  }
  for (const auto& row : x_given_y) {
    if (static_cast<int>(row.size()) != arity) {
      throw PreconditionError(
          "conditional bound vectors must all have the same length (got " +
          std::to_string(row.size()) + " and " + std::to_string(arity) + ")");
    }
  }
  return arity;
}

void check_kernel_inputs(const std::vector<BoundVector>& x_given_y,
                         const BoundVector& b_y) {
  common_arity(x_given_y);
  if (x_given_y.size() != b_y.size()) {
    throw PreconditionError("conditional table has " +
                            std::to_string(x_given_y.size()) +
                            " rows but the predecessor has " +
                            std::to_string(b_y.size()) + " outcomes");
  }
}

void check_index(int index, int limit, const char* what) {
  if (index < 0 || index >= limit) {
    throw PreconditionError(std::string(what) + " index " +
                            std::to_string(index) + " out of range [0, " +
                            std::to_string(limit) + ")");
  }
}

// Upper bound on P(X = x_index | Y = y): lower bound plus that row's slack.
double row_upper(const std::vector<BoundVector>& x_given_y, int y,
                 int x_index) {
  return x_given_y[y][x_index] + range(x_given_y[y]);
}

}  // namespace

int marginal_slack_index(const std::vector<BoundVector>& x_given_y,
                         int x_index) {
  check_index(x_index, common_arity(x_given_y), "outcome");
  int best = 0;
  for (int y = 1; y < static_cast<int>(x_given_y.size()); ++y) {
    if (x_given_y[y][x_index] < x_given_y[best][x_index]) best = y;
  }
  return best;
}

double marginal_lower_bound(const std::vector<BoundVector>& x_given_y,
                            const BoundVector& b_y, int x_index, int slack_y) {
  check_kernel_inputs(x_given_y, b_y);
  const int n = static_cast<int>(b_y.size());
  check_index(x_index, static_cast<int>(x_given_y.front().size()), "outcome");
  check_index(slack_y, n, "slack outcome");
  const double r_y = range(b_y);
  double acc = x_given_y[slack_y][x_index] * (b_y[slack_y] + r_y);
  for (int y = 0; y < n; ++y) {
    if (y != slack_y) acc += x_given_y[y][x_index] * b_y[y];
  }
  return acc;
}

BoundVector marginal_lower_bounds(const std::vector<BoundVector>& x_given_y,
                                  const BoundVector& b_y) {
  check_kernel_inputs(x_given_y, b_y);
  const int arity = static_cast<int>(x_given_y.front().size());
  std::vector<double> out(arity);
  for (int x = 0; x < arity; ++x) {
    out[x] =
        marginal_lower_bound(x_given_y, b_y, x, marginal_slack_index(x_given_y, x));
  }
  return BoundVector(std::move(out));
}

int posterior_slack_index(const std::vector<BoundVector>& x_given_y,
                          int x_index, int y_index) {
  check_index(x_index, common_arity(x_given_y), "outcome");
  check_index(y_index, static_cast<int>(x_given_y.size()),
              "conditioned outcome");
  int best = -1;
  double best_upper = 0.0;
  for (int y = 0; y < static_cast<int>(x_given_y.size()); ++y) {
    if (y == y_index) continue;
    const double u = row_upper(x_given_y, y, x_index);
    if (best < 0 || u > best_upper) {
      best = y;
      best_upper = u;
    }
  }
  return best;
}

double posterior_lower_bound(const std::vector<BoundVector>& x_given_y,
                             const BoundVector& b_y, int x_index, int y_index,
                             int slack_y) {
  check_kernel_inputs(x_given_y, b_y);
  const int n = static_cast<int>(b_y.size());
  check_index(x_index, static_cast<int>(x_given_y.front().size()), "outcome");
  check_index(y_index, n, "conditioned outcome");
  if (slack_y == y_index) {
    throw PreconditionError(
        "slack outcome must differ from the conditioned outcome");
  }
  if (n == 1) {
    if (slack_y != -1) {
      throw PreconditionError(
          "slack outcome must be -1 when the predecessor has one outcome");
    }
  } else {
    check_index(slack_y, n, "slack outcome");
  }

  const double r_y = range(b_y);
  const double numer = x_given_y[y_index][x_index] * b_y[y_index];
  double denom = numer;
  if (slack_y >= 0) {
    denom += row_upper(x_given_y, slack_y, x_index) * (b_y[slack_y] + r_y);
  }
  for (int y = 0; y < n; ++y) {
    if (y == y_index || y == slack_y) continue;
    denom += row_upper(x_given_y, y, x_index) * b_y[y];
  }
  return denom > 0.0 ? numer / denom : 0.0;
}

BoundVector posterior_lower_bounds(const std::vector<BoundVector>& x_given_y,
                                   const BoundVector& b_y, int x_index) {
  check_kernel_inputs(x_given_y, b_y);
  const int n = static_cast<int>(b_y.size());
  std::vector<double> out(n);
  for (int y = 0; y < n; ++y) {
    out[y] = posterior_lower_bound(x_given_y, b_y, x_index, y,
                                   posterior_slack_index(x_given_y, x_index, y));
  }
  return BoundVector(std::move(out));
}

// --- Structural transformations ------------------------------------------

namespace {

constexpr long long kMaxContexts = 100'000'000;

std::vector<int> cards_for(const InfluenceDiagram& d,
                           const std::vector<NodeId>& parents) {
  std::vector<int> cards;
  cards.reserve(parents.size());
  for (const auto& p : parents) cards.push_back(d.node(p).space.size());
  return cards;
}

int checked_context_count(const std::vector<int>& cards, const NodeId& node) {
  long long n = 1;
  for (int c : cards) {
    n *= c;
    if (n > kMaxContexts) {
      throw CapacityError("transformed table for '" + node +
                          "' would exceed " + std::to_string(kMaxContexts) +
                          " contexts");
    }
  }
  return static_cast<int>(n);
}

// Mixed-radix decode of a flat context index, first coordinate slowest —
// the same layout LowerBoundTable uses.
std::vector<int> decode_context(int flat, const std::vector<int>& cards) {
  std::vector<int> values(cards.size());
  for (int i = static_cast<int>(cards.size()) - 1; i >= 0; --i) {
    values[i] = flat % cards[i];
    flat /= cards[i];
  }
  return values;
}

// One decoded context over the merged predecessors, optionally extended
// with a value for one extra node (the node being marginalized out).
struct ContextView {
  const std::vector<NodeId>& names;
  const std::vector<int>& values;
  const NodeId* extra_node = nullptr;
  int extra_value = -1;

  int value_of(const NodeId& n) const {
    if (extra_node != nullptr && n == *extra_node) return extra_value;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == n) return values[i];
    }
    throw PreconditionError("no value for predecessor '" + n +
                            "' in the merged context");
  }
};

ParentConfig restrict_to(const ContextView& ctx,
                         const std::vector<NodeId>& parents) {
  ParentConfig cfg;
  cfg.assignments.reserve(parents.size());
  for (const auto& p : parents) cfg.assignments.push_back(ctx.value_of(p));
  return cfg;
}

// The conditional table of x restricted to one merged context, as one
// BoundVector per outcome of y.
std::vector<BoundVector> slice_given_y(const LowerBoundTable& x_table,
                                       const std::vector<NodeId>& merged,
                                       const std::vector<int>& values,
                                       const NodeId& y, int y_card) {
  std::vector<BoundVector> rows;
  rows.reserve(y_card);
  for (int k = 0; k < y_card; ++k) {
    ContextView view{merged, values, &y, k};
    rows.push_back(x_table.at(restrict_to(view, x_table.parents())));
  }
  return rows;
}

}  // namespace

std::vector<NodeId> PartitionedPredecessors::merged() const {
  std::vector<NodeId> all;
  all.reserve(only_y.size() + shared.size() + only_x.size());
  all.insert(all.end(), only_y.begin(), only_y.end());
  all.insert(all.end(), shared.begin(), shared.end());
  all.insert(all.end(), only_x.begin(), only_x.end());
  return all;
}

PartitionedPredecessors partition_predecessors(const InfluenceDiagram& d,
                                               const NodeId& y,
                                               const NodeId& x) {
  const auto& py = d.parents(y);
  const auto& px = d.parents(x);
  const auto in = [](const std::vector<NodeId>& v, const NodeId& n) {
    return std::find(v.begin(), v.end(), n) != v.end();
  };
  PartitionedPredecessors out;
  // Walking the diagram's node list leaves each group in declaration order.
  for (const auto& node : d.nodes()) {
    const NodeId& id = node.id();
    if (id == y || id == x) continue;
    const bool of_y = in(py, id);
    const bool of_x = in(px, id);
    if (of_y && of_x) {
      out.shared.push_back(id);
    } else if (of_y) {
      out.only_y.push_back(id);
    } else if (of_x) {
      out.only_x.push_back(id);
    }
  }
  return out;
}

InfluenceDiagram remove_node(const InfluenceDiagram& d, const NodeId& y) {
  if (!d.contains(y)) {
    throw PreconditionError("cannot remove '" + y + "': no such node");
  }
  const auto succ = d.successors(y);
  if (succ.size() != 1) {
    std::string listed;
    for (const auto& s : succ) {
      if (!listed.empty()) listed += ", ";
      listed += "'" + s + "'";
    }
    throw PreconditionError(
        "cannot remove '" + y + "': it must have exactly one successor, " +
        (succ.empty() ? "but it has none" : "but it has " +
                            std::to_string(succ.size()) + ": " + listed));
  }
  const NodeId x = succ.front();

  const auto merged = partition_predecessors(d, y, x).merged();
  const auto cards = cards_for(d, merged);
  const int context_count = checked_context_count(cards, x);

  const Node& xn = d.node(x);
  const Node& yn = d.node(y);
  const auto& y_parents = yn.table.parents();
  const int y_card = yn.space.size();

  std::vector<BoundVector> entries;
  entries.reserve(context_count);
  for (int flat = 0; flat < context_count; ++flat) {
    const auto values = decode_context(flat, cards);
    const ContextView view{merged, values};
    const BoundVector& b_y = yn.table.at(restrict_to(view, y_parents));
    const auto x_given_y =
        slice_given_y(xn.table, merged, values, y, y_card);
    entries.push_back(marginal_lower_bounds(x_given_y, b_y));
  }

  Node replacement{xn.space,
                   LowerBoundTable(x, merged, cards, std::move(entries))};
  return d.with_node_replaced(std::move(replacement)).without_node(y);
}

InfluenceDiagram reverse_arc(const InfluenceDiagram& d, const NodeId& y,
                             const NodeId& x) {
  if (!d.has_arc(y, x)) {
    throw PreconditionError("no arc '" + y + "' -> '" + x + "' to reverse");
  }
  if (const auto detour = find_other_directed_path(d, y, x)) {
    std::string path;
    for (const auto& step : *detour) {
      if (!path.empty()) path += " -> ";
      path += step;
    }
    throw PreconditionError("reversing '" + y + "' -> '" + x +
                            "' would create a cycle: the path " + path +
                            " also connects them");
  }

  const auto merged = partition_predecessors(d, y, x).merged();
  const auto cards = cards_for(d, merged);
  const int context_count = checked_context_count(cards, x);

  const Node& xn = d.node(x);
  const Node& yn = d.node(y);
  const auto& y_parents = yn.table.parents();
  const int y_card = yn.space.size();
  const int x_card = xn.space.size();
  if (static_cast<long long>(context_count) * x_card > kMaxContexts) {
    throw CapacityError("transformed table for '" + y + "' would exceed " +
                        std::to_string(kMaxContexts) + " contexts");
  }

  // Both replacement tables are read off the original diagram before
  // either node is touched.
  std::vector<BoundVector> x_entries;
  x_entries.reserve(context_count);
  std::vector<BoundVector> y_entries(
      static_cast<std::size_t>(context_count) * x_card);
  for (int flat = 0; flat < context_count; ++flat) {
    const auto values = decode_context(flat, cards);
    const ContextView view{merged, values};
    const BoundVector& b_y = yn.table.at(restrict_to(view, y_parents));
    const auto x_given_y =
        slice_given_y(xn.table, merged, values, y, y_card);
    x_entries.push_back(marginal_lower_bounds(x_given_y, b_y));
    for (int j = 0; j < x_card; ++j) {
      // x is y's first (slowest-varying) predecessor after reversal.
      y_entries[static_cast<std::size_t>(j) * context_count + flat] =
          posterior_lower_bounds(x_given_y, b_y, j);
    }
  }

  std::vector<NodeId> y_new_parents;
  y_new_parents.reserve(merged.size() + 1);
  y_new_parents.push_back(x);
  y_new_parents.insert(y_new_parents.end(), merged.begin(), merged.end());
  std::vector<int> y_new_cards;
  y_new_cards.reserve(cards.size() + 1);
  y_new_cards.push_back(x_card);
  y_new_cards.insert(y_new_cards.end(), cards.begin(), cards.end());

  Node x_new{xn.space,
             LowerBoundTable(x, merged, cards, std::move(x_entries))};
  Node y_new{yn.space, LowerBoundTable(y, std::move(y_new_parents),
                                       std::move(y_new_cards),
                                       std::move(y_entries))};
  return d.with_node_replaced(std::move(x_new))
      .with_node_replaced(std::move(y_new));
}

}  // namespace iid
