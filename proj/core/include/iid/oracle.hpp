#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "iid/bounds.hpp"
#include "iid/diagram.hpp"
#include "iid/query.hpp"

namespace iid {

// Reference implementations that answer queries by exhaustion instead of
// table transformations. They are far too slow for real diagrams and exist
// to certify the fast engine: every value they report is attained by some
// concrete choice of distributions consistent with the diagram's bounds.

/// All extreme points of the feasible set {p >= b, sum(p) = 1}: one per
/// outcome, raising that outcome to its upper bound while the rest stay at
/// their lower bounds. A zero-range vector yields the single point b.
std::vector<std::vector<double>> vertex_distributions(const BoundVector& b);

/// One extreme-point choice per table context, for every node:
/// choices[node_index][context_index] indexes into that context's
/// vertex_distributions.
struct VertexAssignment {
  std::vector<std::vector<int>> choices;
};

/// Dense joint distribution over every node of a diagram, nodes in
/// declaration order, the first node varying slowest.
struct JointTable {
  std::vector<NodeId> nodes;
  std::vector<int> cards;
  std::vector<double> probs;

  std::size_t index_of(const std::vector<int>& outcomes) const;
};

/// The joint distribution obtained by pinning every table entry to one of
/// its extreme points.
JointTable joint_from_assignment(const InfluenceDiagram& d,
                                 const VertexAssignment& va);

/// The joint distribution of a diagram whose entries are exact
/// distributions. Throws PreconditionError if some entry's values sum to
/// something farther than `tol` from one.
JointTable exact_joint(const InfluenceDiagram& d, double tol = 1e-9);

/// P(target | evidence) summed out of a joint table, or nullopt when the
/// evidence has probability zero.
std::optional<std::vector<double>> conditional_from_joint(
    const JointTable& joint, const NodeId& target,
    const std::vector<std::pair<NodeId, int>>& evidence);

struct OracleOptions {
  /// Upper limit on extreme-point combinations before giving up with a
  /// CapacityError; the work grows as the product of context counts.
  long long max_assignments = 10'000'000;
};

/// Answers a query by enumerating every combination of extreme points and
/// computing the exact conditional for each. Each outcome's lower end is
/// the smallest value attained; the upper ends are then derived from those
/// minima exactly as the engine derives them (one minus the sum of the
/// other outcomes' minima), which is how interval results are defined
/// throughout. The attained maximum can sit strictly below that derived
/// upper, so deriving — not maximizing — is what makes engine and oracle
/// comparable. Combinations that give the evidence probability zero are
/// skipped; if every combination is skipped the result is the vacuous
/// [0, 1]. A sound engine must contain this result, and a sharp one must
/// match it.
std::vector<ProbInterval> brute_force_interval(
    const InfluenceDiagram& d, const Query& q, const OracleOptions& opts = {});

/// Interval marginal of X over every combination of extreme points of the
/// predecessor's and each conditional row's feasible sets: attained minima
/// below, uppers derived from the minima.
std::vector<ProbInterval> exhaustive_marginal_intervals(
    const std::vector<BoundVector>& x_given_y, const BoundVector& b_y);

/// Interval posterior P(Y | X = x_index) over the same combinations,
/// skipping those where the observation has probability zero; vacuous
/// [0, 1] if that leaves nothing.
std::vector<ProbInterval> exhaustive_posterior_intervals(
    const std::vector<BoundVector>& x_given_y, const BoundVector& b_y,
    int x_index);

/// A distribution drawn uniformly from {p >= b, sum(p) = 1}: the slack
/// 1 - sum(b) is split by a uniform sample from the probability simplex.
/// Zero-range inputs return their exact values without consuming
/// randomness.
std::vector<double> sample_distribution(const BoundVector& b,
                                        std::mt19937_64& gen);

/// A copy of the diagram with every table entry replaced by a distribution
/// drawn from its feasible set. The result is an exact diagram: every
/// entry's values sum to one (up to rounding), so exact_joint applies.
/// Deterministic for a given seed.
InfluenceDiagram sample_diagram(const InfluenceDiagram& d,
                                std::uint64_t seed);

}  // namespace iid
