#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "iid/bounds.hpp"
#include "iid/diagram.hpp"

namespace testutil {

// Paths handed to the test binaries by ctest: the built CLI executable and
// the directory holding the shipped diagram files. Empty when not supplied.
extern std::string cli_path;
extern std::string data_dir;

// Consumes --cli=PATH and --data=DIR from the argument list and returns the
// remaining arguments (argv[0] included) for the test framework.
std::vector<char*> strip_harness_args(int argc, char** argv);

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI with `args` appended, capturing stdout. Stderr is discarded
// unless merge_stderr folds it into the captured text.
RunResult run_cli(const std::string& args, bool merge_stderr = false);

// Deterministic source for all generated test data.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::mt19937_64& gen() { return gen_; }
  int pick(int lo, int hi);  // uniform on [lo, hi]
  double unit();             // uniform on [0, 1)
  bool chance(double p);

 private:
  std::mt19937_64 gen_;
};

// Everything generated here uses dyadic rationals with denominator 2^20, so
// sums, ranges and upper bounds come out of the arithmetic without rounding
// error; an "exact" table really has range exactly 0.0.
inline constexpr int kMassDenominator = 1 << 20;

// Splits `mass` (a numerator out of kMassDenominator) over `arity` entries,
// each receiving at least `min_part`, in random order.
iid::BoundVector dyadic_bounds(Rng& rng, int arity, int mass, int min_part);

// Valid bounds with every entry >= 1/256 and slack >= 1/256.
iid::BoundVector loose_bounds(Rng& rng, int arity);
// An exact distribution (sums to one) with every entry >= 1/256.
iid::BoundVector exact_bounds(Rng& rng, int arity);

// The worked two-node diagram shipped as data/two_node.json: three-outcome
// Y feeding three-outcome X.
iid::InfluenceDiagram two_node_example();

// Random two-node diagram Y -> X, 2..max_outcomes outcomes per node,
// strictly positive bounds everywhere. Roughly a third of the conditional
// rows are exact.
iid::InfluenceDiagram random_two_node(Rng& rng, int max_outcomes = 4);

// Random 3..5-node DAG with 2-3 outcomes per node and strictly positive
// bounds, regenerated until its extreme-point combination count fits under
// `max_assignments` so exhaustive enumeration stays cheap. With `exact`
// every table entry is a point distribution.
iid::InfluenceDiagram random_diagram(Rng& rng,
                                     long long max_assignments = 2000,
                                     bool exact = false);

// Product over all (node, context) pairs of the number of extreme points of
// that context's feasible set, saturating at 2^62.
long long assignment_count(const iid::InfluenceDiagram& d);

// Conditional rows of `x` as a function of `y`: entry k is x's bound vector
// with y pinned to outcome k and every other parent pinned by `fixed`
// (node id -> outcome index).
std::vector<iid::BoundVector> rows_given(const iid::InfluenceDiagram& d,
                                         const iid::NodeId& x,
                                         const iid::NodeId& y,
                                         const std::map<iid::NodeId, int>& fixed);

// `y`'s bound vector with all of its parents pinned by `fixed`.
iid::BoundVector vector_given(const iid::InfluenceDiagram& d,
                              const iid::NodeId& y,
                              const std::map<iid::NodeId, int>& fixed);

}  // namespace testutil
