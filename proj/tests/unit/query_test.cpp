#include <doctest.h>

#include <cmath>

#include "iid/diagram.hpp"
#include "iid/errors.hpp"
#include "iid/oracle.hpp"
#include "iid/query.hpp"
#include "iid/validate.hpp"
#include "testutil.hpp"

using iid::BoundVector;
using iid::InfluenceDiagram;
using iid::LowerBoundTable;
using iid::Node;
using iid::Query;
using iid::StepKind;
using iid::TransformStep;

namespace {

Node make_node(std::string id, std::vector<std::string> outcomes,
               std::vector<iid::NodeId> parents, std::vector<int> cards,
               std::vector<BoundVector> entries) {
  Node n;
  n.space = {id, std::move(outcomes)};
  n.table = LowerBoundTable(std::move(id), std::move(parents),
                            std::move(cards), std::move(entries));
  return n;
}

// Y -> X -> W chain with binary nodes.
InfluenceDiagram chain3() {
  std::vector<Node> nodes;
  nodes.push_back(make_node("Y", {"a", "b"}, {}, {}, {BoundVector({0.3, 0.4})}));
  nodes.push_back(make_node("X", {"a", "b"}, {"Y"}, {2},
                            {BoundVector({0.6, 0.2}), BoundVector({0.1, 0.7})}));
  nodes.push_back(make_node("W", {"a", "b"}, {"X"}, {2},
                            {BoundVector({0.5, 0.3}), BoundVector({0.2, 0.6})}));
  return InfluenceDiagram(std::move(nodes));
}

// Applies the logged steps and reads the target row at the evidence context,
// reproducing what `answer` reports.
void check_replay(const InfluenceDiagram& d, const Query& q,
                  const iid::QueryResult& result) {
  InfluenceDiagram current = d;
  for (const auto& step : result.log) {
    current = iid::apply_step(current, step);
  }
  const auto& node = current.node(q.target);
  iid::ParentConfig cfg;
  for (const auto& parent : node.table.parents()) {
    int value = -1;
    for (const auto& [ev_node, ev_label] : q.evidence) {
      if (ev_node == parent) {
        value = *current.node(ev_node).space.index_of(ev_label);
      }
    }
    REQUIRE(value >= 0);
    cfg.assignments.push_back(value);
  }
  const auto& row = node.table.at(cfg);
  const double r = iid::range(row);
  REQUIRE(result.intervals.size() == row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    CHECK(result.intervals[i].lo == row[i]);
    CHECK(result.intervals[i].hi == row[i] + r);
  }
}

}  // namespace

TEST_CASE("query validation rejects ill-posed requests") {
  const auto d = testutil::two_node_example();
  CHECK_THROWS_AS(iid::validate_query(d, {"Q", {}}), iid::PreconditionError);
  CHECK_THROWS_AS(iid::validate_query(d, {"X", {{"Q", "q1"}}}),
                  iid::PreconditionError);
  CHECK_THROWS_AS(iid::validate_query(d, {"X", {{"Y", "nope"}}}),
                  iid::PreconditionError);
  CHECK_THROWS_AS(iid::validate_query(d, {"X", {{"X", "x1"}}}),
                  iid::PreconditionError);
  CHECK_THROWS_AS(
      iid::validate_query(d, {"X", {{"Y", "y1"}, {"Y", "y2"}}}),
      iid::PreconditionError);
  CHECK_NOTHROW(iid::validate_query(d, {"X", {{"Y", "y1"}}}));
}

TEST_CASE("barren nodes are pruned until only relevant ones remain") {
  SUBCASE("the target's ancestors are never barren") {
    const auto d = testutil::two_node_example();
    std::vector<TransformStep> log;
    const auto pruned = iid::prune_barren(d, {"X"}, &log);
    CHECK(pruned.size() == 2);
    CHECK(log.empty());
  }
  SUBCASE("a childless bystander disappears") {
    std::vector<Node> nodes;
    nodes.push_back(make_node("Y", {"a", "b"}, {}, {}, {BoundVector({0.5, 0.5})}));
    nodes.push_back(make_node("X", {"a", "b"}, {"Y"}, {2},
                              {BoundVector({0.5, 0.5}), BoundVector({0.5, 0.5})}));
    nodes.push_back(make_node("Z", {"a", "b"}, {}, {}, {BoundVector({0.5, 0.5})}));
    std::vector<TransformStep> log;
    const auto pruned =
        iid::prune_barren(InfluenceDiagram(std::move(nodes)), {"X"}, &log);
    CHECK(pruned.size() == 2);
    CHECK_FALSE(pruned.contains("Z"));
    REQUIRE(log.size() == 1);
    CHECK(log[0] == TransformStep{StepKind::PruneBarren, "Z", ""});
  }
  SUBCASE("evidence is kept, descendants of it go") {
    const auto pruned = iid::prune_barren(chain3(), {"Y", "X"});
    CHECK(pruned.contains("Y"));
    CHECK(pruned.contains("X"));
    CHECK_FALSE(pruned.contains("W"));
  }
  SUBCASE("pruning cascades through dead chains") {
    const auto pruned = iid::prune_barren(chain3(), {"Y"});
    CHECK(pruned.size() == 1);
  }
}

TEST_CASE("plans for the worked example are single steps") {
  const auto d = testutil::two_node_example();
  CHECK(iid::plan(d, {"X", {}}) ==
        std::vector<TransformStep>{{StepKind::RemoveNode, "Y", "X"}});
  CHECK(iid::plan(d, {"Y", {{"X", "x1"}}}) ==
        std::vector<TransformStep>{{StepKind::ReverseArc, "Y", "X"}});
}

TEST_CASE("ancestor chains are eliminated root-first") {
  std::vector<Node> nodes;
  nodes.push_back(make_node("Z", {"a", "b"}, {}, {}, {BoundVector({0.3, 0.4})}));
  nodes.push_back(make_node("Y", {"a", "b"}, {"Z"}, {2},
                            {BoundVector({0.6, 0.2}), BoundVector({0.1, 0.7})}));
  nodes.push_back(make_node("X", {"a", "b"}, {"Y"}, {2},
                            {BoundVector({0.5, 0.3}), BoundVector({0.2, 0.6})}));
  const InfluenceDiagram d(std::move(nodes));
  const auto steps = iid::plan(d, {"X", {}});
  CHECK(steps == std::vector<TransformStep>{{StepKind::RemoveNode, "Z", "Y"},
                                            {StepKind::RemoveNode, "Y", "X"}});
}

TEST_CASE("step log renders human-readable") {
  CHECK(iid::to_string({StepKind::PruneBarren, "W", ""}) == "prune W");
  CHECK(iid::to_string({StepKind::RemoveNode, "Z", "Y"}) == "remove Z into Y");
  CHECK(iid::to_string({StepKind::ReverseArc, "Y", "X"}) == "reverse Y -> X");
}

TEST_CASE("the worked example's query results") {
  const auto d = testutil::two_node_example();

  SUBCASE("marginal of the successor") {
    const auto result = iid::answer(d, {"X", {}});
    REQUIRE(result.outcomes == std::vector<std::string>{"x1", "x2", "x3"});
    CHECK(result.intervals[0].lo == doctest::Approx(0.13).epsilon(1e-12));
    CHECK(result.intervals[0].hi == doctest::Approx(0.52).epsilon(1e-12));
    CHECK(result.intervals[1].lo == doctest::Approx(0.07).epsilon(1e-12));
    CHECK(result.intervals[1].hi == doctest::Approx(0.46).epsilon(1e-12));
    CHECK(result.intervals[2].lo == doctest::Approx(0.41).epsilon(1e-12));
    CHECK(result.intervals[2].hi == doctest::Approx(0.80).epsilon(1e-12));
    CHECK(result.range == doctest::Approx(0.39).epsilon(1e-12));
    CHECK(result.log ==
          std::vector<TransformStep>{{StepKind::RemoveNode, "Y", "X"}});
  }

  SUBCASE("posterior of the predecessor") {
    const auto result = iid::answer(d, {"Y", {{"X", "x1"}}});
    CHECK(result.intervals[0].lo == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(result.intervals[1].lo == doctest::Approx(0.02 / 0.51).epsilon(1e-12));
    CHECK(result.intervals[2].lo == doctest::Approx(0.04 / 0.52).epsilon(1e-12));
    // Four-place prints: .8839, .7231, .7608.
    CHECK(std::abs(result.intervals[0].hi - 0.8839) < 5e-5);
    CHECK(std::abs(result.intervals[1].hi - 0.7231) < 5e-5);
    CHECK(std::abs(result.intervals[2].hi - 0.7608) < 5e-5);
    CHECK(result.log ==
          std::vector<TransformStep>{{StepKind::ReverseArc, "Y", "X"}});
  }

  SUBCASE("root target with no evidence reads the stored bounds") {
    const auto result = iid::answer(d, {"Y", {}});
    CHECK(result.intervals[0].lo == 0.2);
    CHECK(result.intervals[0].hi == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(result.intervals[1].lo == 0.1);
    CHECK(result.intervals[2].lo == 0.4);
    // X is barren for this query and gets pruned, nothing else happens.
    CHECK(result.log ==
          std::vector<TransformStep>{{StepKind::PruneBarren, "X", ""}});
  }
}

TEST_CASE("evidence downstream of the target conditions it") {
  // W is observed, so the chain needs a reversal after removing the head.
  const auto d = chain3();
  const auto result = iid::answer(d, {"X", {{"W", "a"}}});
  CHECK(result.intervals.size() == 2);
  for (const auto& interval : result.intervals) {
    CHECK(interval.lo >= 0.0);
    CHECK(interval.hi <= 1.0);
    CHECK(interval.lo <= interval.hi);
  }
  const auto oracle = iid::brute_force_interval(d, {"X", {{"W", "a"}}});
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    CHECK(result.intervals[i].lo <= oracle[i].lo + 1e-9);
    CHECK(result.intervals[i].hi >= oracle[i].hi - 1e-9);
  }
}

TEST_CASE("answers carry the range identity") {
  testutil::Rng rng(201);
  for (int trial = 0; trial < 80; ++trial) {
    const auto d = testutil::random_diagram(rng);
    const int target = rng.pick(0, d.size() - 1);
    Query q{d.node_at(target).id(), {}};
    if (rng.chance(0.5)) {
      int ev = rng.pick(0, d.size() - 1);
      if (ev != target) {
        const auto& node = d.node_at(ev);
        q.evidence.push_back(
            {node.id(),
             node.space.outcomes[rng.pick(0, node.space.size() - 1)]});
      }
    }
    const auto result = iid::answer(d, q);
    const auto& intervals = result.intervals;
    REQUIRE(!intervals.empty());
    double lo_sum = 0.0;
    for (const auto& iv : intervals) lo_sum += iv.lo;
    for (const auto& iv : intervals) {
      CHECK(iv.hi - iv.lo == doctest::Approx(result.range).epsilon(1e-9));
      CHECK(iv.hi == doctest::Approx(1.0 - (lo_sum - iv.lo)).epsilon(1e-9));
      CHECK(iv.lo >= -1e-15);
      CHECK(iv.hi <= 1.0 + 1e-15);
    }
    check_replay(d, q, result);
  }
}

TEST_CASE("pre-pruning does not change any answer") {
  testutil::Rng rng(202);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = testutil::random_diagram(rng);
    const int target = rng.pick(0, d.size() - 1);
    const Query q{d.node_at(target).id(), {}};
    const auto direct = iid::answer(d, q);
    const auto pruned = iid::answer(iid::prune_barren(d, {q.target}), q);
    REQUIRE(direct.intervals.size() == pruned.intervals.size());
    for (std::size_t i = 0; i < direct.intervals.size(); ++i) {
      CHECK(direct.intervals[i].lo == pruned.intervals[i].lo);
      CHECK(direct.intervals[i].hi == pruned.intervals[i].hi);
    }
  }
}

TEST_CASE("two evidence nodes still contain the exhaustive intervals") {
  testutil::Rng rng(203);
  int multi_evidence_runs = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = testutil::random_diagram(rng);
    if (d.size() < 4) continue;
    const auto& target = d.node_at(0);
    const auto& e1 = d.node_at(d.size() - 2);
    const auto& e2 = d.node_at(d.size() - 1);
    Query q{target.id(),
            {{e1.id(), e1.space.outcomes[rng.pick(0, e1.space.size() - 1)]},
             {e2.id(), e2.space.outcomes[rng.pick(0, e2.space.size() - 1)]}}};
    const auto result = iid::answer(d, q);
    const auto oracle = iid::brute_force_interval(d, q);
    REQUIRE(result.intervals.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      CHECK(result.intervals[i].lo <= oracle[i].lo + 1e-9);
      CHECK(result.intervals[i].hi >= oracle[i].hi - 1e-9);
    }
    ++multi_evidence_runs;
  }
  CHECK(multi_evidence_runs > 10);
}

TEST_CASE("sampled exact diagrams fall inside every query's intervals") {
  testutil::Rng rng(204);
  for (int trial = 0; trial < 15; ++trial) {
    const auto d = testutil::random_diagram(rng);
    for (int t = 0; t < d.size(); ++t) {
      const Query q{d.node_at(t).id(), {}};
      const auto result = iid::answer(d, q);
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto sampled = iid::sample_diagram(d, seed);
        const auto joint = iid::exact_joint(sampled, 1e-6);
        const auto exact = iid::conditional_from_joint(joint, q.target, {});
        REQUIRE(exact.has_value());
        for (std::size_t i = 0; i < exact->size(); ++i) {
          CHECK((*exact)[i] >= result.intervals[i].lo - 1e-9);
          CHECK((*exact)[i] <= result.intervals[i].hi + 1e-9);
        }
      }
    }
  }
}
