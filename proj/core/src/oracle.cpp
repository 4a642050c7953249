#include "iid/oracle.hpp"

#include <cmath>
#include <string>

#include "iid/errors.hpp"

namespace iid {

std::vector<std::vector<double>> vertex_distributions(const BoundVector& b) {
  const double r = range(b);
  if (r == 0.0) return {b.values()};
  std::vector<std::vector<double>> verts;
  verts.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::vector<double> v = b.values();
    v[i] += r;
    verts.push_back(std::move(v));
  }
  return verts;
}

std::size_t JointTable::index_of(const std::vector<int>& outcomes) const {
  if (outcomes.size() != cards.size()) {
    throw PreconditionError("joint index needs one outcome per node");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    if (outcomes[i] < 0 || outcomes[i] >= cards[i]) {
      throw PreconditionError("joint outcome index out of range");
    }
    flat = flat * cards[i] + outcomes[i];
  }
  return flat;
}

namespace {

// Declaration index and cardinality of each table parent, for turning a
// joint state into a per-node context index.
struct ParentMap {
  std::vector<int> position;
  std::vector<int> card;
};

std::vector<ParentMap> parent_maps(const InfluenceDiagram& d) {
  std::vector<ParentMap> maps(d.size());
  for (int i = 0; i < d.size(); ++i) {
    const auto& table = d.node_at(i).table;
    for (const auto& p : table.parents()) {
      const int pos = d.index_of(p);
      if (pos < 0) {
        throw PreconditionError("table of '" + d.node_at(i).id() +
                                "' refers to unknown node '" + p + "'");
      }
      maps[i].position.push_back(pos);
      maps[i].card.push_back(d.node_at(pos).space.size());
    }
  }
  return maps;
}

// Builds the dense joint for per-context distributions supplied by
// dist(node_index, context_index) -> const std::vector<double>&.
template <typename DistFn>
JointTable joint_impl(const InfluenceDiagram& d, DistFn&& dist) {
  JointTable jt;
  std::size_t total = 1;
  for (const auto& node : d.nodes()) {
    jt.nodes.push_back(node.id());
    jt.cards.push_back(node.space.size());
    total *= static_cast<std::size_t>(node.space.size());
  }
  const auto maps = parent_maps(d);

  jt.probs.assign(total, 0.0);
  std::vector<int> state(d.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double p = 1.0;
    for (int i = 0; i < d.size() && p != 0.0; ++i) {
      int ctx = 0;
      for (std::size_t k = 0; k < maps[i].position.size(); ++k) {
        ctx = ctx * maps[i].card[k] + state[maps[i].position[k]];
      }
      p *= dist(i, ctx)[state[i]];
    }
    jt.probs[flat] = p;

    for (int i = d.size() - 1; i >= 0; --i) {
      if (++state[i] < jt.cards[i]) break;
      state[i] = 0;
    }
  }
  return jt;
}

}  // namespace

JointTable joint_from_assignment(const InfluenceDiagram& d,
                                 const VertexAssignment& va) {
  if (static_cast<int>(va.choices.size()) != d.size()) {
    throw PreconditionError("assignment needs one choice list per node");
  }
  // Materialize the chosen extreme point of every context up front.
  std::vector<std::vector<std::vector<double>>> chosen(d.size());
  for (int i = 0; i < d.size(); ++i) {
    const auto& table = d.node_at(i).table;
    const int contexts = table.context_count();
    if (static_cast<int>(va.choices[i].size()) != contexts) {
      throw PreconditionError("assignment for '" + d.node_at(i).id() +
                              "' needs one choice per context");
    }
    chosen[i].reserve(contexts);
    for (int c = 0; c < contexts; ++c) {
      auto verts = vertex_distributions(table.at_index(c));
      const int pick = va.choices[i][c];
      if (pick < 0 || pick >= static_cast<int>(verts.size())) {
        throw PreconditionError("extreme-point choice out of range for '" +
                                d.node_at(i).id() + "'");
      }
      chosen[i].push_back(std::move(verts[pick]));
    }
  }
  return joint_impl(d, [&chosen](int i, int c) -> const std::vector<double>& {
    return chosen[i][c];
  });
}

JointTable exact_joint(const InfluenceDiagram& d, double tol) {
  for (const auto& node : d.nodes()) {
    for (const auto& entry : node.table.entries()) {
      if (std::abs(entry.sum() - 1.0) > tol) {
        throw PreconditionError(
            "table of '" + node.id() +
            "' is not exact: a context's values sum to " +
            std::to_string(entry.sum()));
      }
    }
  }
  return joint_impl(d, [&d](int i, int c) -> const std::vector<double>& {
    return d.node_at(i).table.at_index(c).values();
  });
}

std::optional<std::vector<double>> conditional_from_joint(
    const JointTable& joint, const NodeId& target,
    const std::vector<std::pair<NodeId, int>>& evidence) {
  const int n = static_cast<int>(joint.nodes.size());
  const auto position = [&joint, n](const NodeId& id) {
    for (int i = 0; i < n; ++i) {
      if (joint.nodes[i] == id) return i;
    }
    throw PreconditionError("joint table has no node '" + id + "'");
  };
  const int t_pos = position(target);
  std::vector<std::pair<int, int>> pinned;
  pinned.reserve(evidence.size());
  for (const auto& [id, outcome] : evidence) {
    pinned.emplace_back(position(id), outcome);
  }

  std::vector<double> num(joint.cards[t_pos], 0.0);
  double den = 0.0;
  std::vector<int> state(n, 0);
  for (std::size_t flat = 0; flat < joint.probs.size(); ++flat) {
    bool match = true;
    for (const auto& [pos, outcome] : pinned) {
      if (state[pos] != outcome) {
        match = false;
        break;
      }
    }
    if (match) {
      den += joint.probs[flat];
      num[state[t_pos]] += joint.probs[flat];
    }
    for (int i = n - 1; i >= 0; --i) {
      if (++state[i] < joint.cards[i]) break;
      state[i] = 0;
    }
  }
  if (den == 0.0) return std::nullopt;
  for (double& v : num) v /= den;
  return num;
}

namespace {

// Folds one attained distribution into the per-outcome minima.
void fold_minima(std::vector<double>& lows, bool& seeded,
                 const std::vector<double>& values) {
  if (!seeded) {
    lows = values;
    seeded = true;
    return;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < lows[i]) lows[i] = values[i];
  }
}

// Intervals with the attained minima below and uppers derived from them,
// mirroring how the engine turns a lower-bound vector into intervals.
std::vector<ProbInterval> intervals_from_minima(
    const std::vector<double>& lows) {
  const BoundVector bv(lows);
  const double r = range(bv);
  std::vector<ProbInterval> out;
  out.reserve(lows.size());
  for (double lo : lows) out.push_back({lo, lo + r});
  return out;
}

// Mixed-radix counter over extreme-point choices.
struct Odometer {
  std::vector<int> radix;
  std::vector<int> digits;

  explicit Odometer(std::vector<int> r)
      : radix(std::move(r)), digits(radix.size(), 0) {}

  bool advance() {
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
      if (++digits[i] < radix[i]) return true;
      digits[i] = 0;
    }
    return false;
  }
};

long long checked_combination_count(const std::vector<int>& radix,
                                    long long cap) {
  long long total = 1;
  for (int r : radix) {
    total *= r;
    if (total > cap) {
      throw CapacityError(
          "exhaustive enumeration needs more than " + std::to_string(cap) +
          " extreme-point combinations; raise the limit or shrink the input");
    }
  }
  return total;
}

}  // namespace

std::vector<ProbInterval> brute_force_interval(const InfluenceDiagram& d,
                                               const Query& q,
                                               const OracleOptions& opts) {
  validate_query(d, q);
  std::vector<std::pair<NodeId, int>> evidence;
  for (const auto& [id, label] : q.evidence) {
    evidence.emplace_back(id, *d.node(id).space.index_of(label));
  }

  // Extreme points of every context of every node, plus the slot layout of
  // the odometer that ranges over them.
  std::vector<std::vector<std::vector<std::vector<double>>>> verts(d.size());
  std::vector<int> radix;
  std::vector<std::pair<int, int>> slot_of;  // (node, context) per slot
  for (int i = 0; i < d.size(); ++i) {
    const auto& table = d.node_at(i).table;
    verts[i].reserve(table.context_count());
    for (int c = 0; c < table.context_count(); ++c) {
      verts[i].push_back(vertex_distributions(table.at_index(c)));
      radix.push_back(static_cast<int>(verts[i][c].size()));
      slot_of.emplace_back(i, c);
    }
  }
  checked_combination_count(radix, opts.max_assignments);

  std::vector<int> slot_base(d.size(), 0);
  for (std::size_t s = 0; s < slot_of.size(); ++s) {
    if (slot_of[s].second == 0) slot_base[slot_of[s].first] = static_cast<int>(s);
  }

  std::vector<double> lows;
  bool seeded = false;
  Odometer odo(radix);
  do {
    const auto joint =
        joint_impl(d, [&](int i, int c) -> const std::vector<double>& {
          return verts[i][c][odo.digits[slot_base[i] + c]];
        });
    const auto cond = conditional_from_joint(joint, q.target, evidence);
    if (cond) fold_minima(lows, seeded, *cond);
  } while (odo.advance());

  if (!seeded) {
    return std::vector<ProbInterval>(d.node(q.target).space.size(),
                                     ProbInterval{0.0, 1.0});
  }
  return intervals_from_minima(lows);
}

std::vector<ProbInterval> exhaustive_marginal_intervals(
    const std::vector<BoundVector>& x_given_y, const BoundVector& b_y) {
  if (x_given_y.size() != b_y.size() || x_given_y.empty()) {
    throw PreconditionError(
        "conditional table must have one row per predecessor outcome");
  }
  const auto verts_y = vertex_distributions(b_y);
  std::vector<std::vector<std::vector<double>>> verts_rows;
  std::vector<int> radix{static_cast<int>(verts_y.size())};
  for (const auto& row : x_given_y) {
    verts_rows.push_back(vertex_distributions(row));
    radix.push_back(static_cast<int>(verts_rows.back().size()));
  }
  checked_combination_count(radix, 10'000'000);

  const std::size_t arity = x_given_y.front().size();
  std::vector<double> lows;
  bool seeded = false;
  std::vector<double> marginal(arity);
  Odometer odo(radix);
  do {
    const auto& py = verts_y[odo.digits[0]];
    for (std::size_t x = 0; x < arity; ++x) {
      double acc = 0.0;
      for (std::size_t y = 0; y < x_given_y.size(); ++y) {
        acc += py[y] * verts_rows[y][odo.digits[y + 1]][x];
      }
      marginal[x] = acc;
    }
    fold_minima(lows, seeded, marginal);
  } while (odo.advance());
  return intervals_from_minima(lows);
}

std::vector<ProbInterval> exhaustive_posterior_intervals(
    const std::vector<BoundVector>& x_given_y, const BoundVector& b_y,
    int x_index) {
  if (x_given_y.size() != b_y.size() || x_given_y.empty()) {
    throw PreconditionError(
        "conditional table must have one row per predecessor outcome");
  }
  if (x_index < 0 ||
      x_index >= static_cast<int>(x_given_y.front().size())) {
    throw PreconditionError("observed outcome index out of range");
  }
  const auto verts_y = vertex_distributions(b_y);
  std::vector<std::vector<std::vector<double>>> verts_rows;
  std::vector<int> radix{static_cast<int>(verts_y.size())};
  for (const auto& row : x_given_y) {
    verts_rows.push_back(vertex_distributions(row));
    radix.push_back(static_cast<int>(verts_rows.back().size()));
  }
  checked_combination_count(radix, 10'000'000);

  const std::size_t n = x_given_y.size();
  std::vector<double> lows;
  bool seeded = false;
  std::vector<double> posterior(n);
  Odometer odo(radix);
  do {
    const auto& py = verts_y[odo.digits[0]];
    double den = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      posterior[y] = py[y] * verts_rows[y][odo.digits[y + 1]][x_index];
      den += posterior[y];
    }
    if (den == 0.0) continue;
    for (double& v : posterior) v /= den;
    fold_minima(lows, seeded, posterior);
  } while (odo.advance());

  if (!seeded) {
    return std::vector<ProbInterval>(n, ProbInterval{0.0, 1.0});
  }
  return intervals_from_minima(lows);
}

std::vector<double> sample_distribution(const BoundVector& b,
                                        std::mt19937_64& gen) {
  const double r = range(b);
  if (r == 0.0) return b.values();
  // Uniform simplex point from normalized exponential spacings; the
  // half-step keeps the uniform draw strictly inside (0, 1).
  std::vector<double> spacing(b.size());
  double total = 0.0;
  for (double& s : spacing) {
    const double u =
        (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
    s = -std::log(u);
    total += s;
  }
  std::vector<double> p(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    p[i] = b[i] + r * spacing[i] / total;
  }
  return p;
}

InfluenceDiagram sample_diagram(const InfluenceDiagram& d,
                                std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Node> nodes;
  nodes.reserve(d.size());
  for (const auto& node : d.nodes()) {
    std::vector<BoundVector> entries;
    entries.reserve(node.table.entries().size());
    for (const auto& entry : node.table.entries()) {
      entries.push_back(BoundVector(sample_distribution(entry, gen)));
    }
    nodes.push_back(Node{
        node.space,
        LowerBoundTable(node.id(), node.table.parents(),
                        node.table.parent_cards(), std::move(entries))});
  }
  return InfluenceDiagram(std::move(nodes));
}

}  // namespace iid
