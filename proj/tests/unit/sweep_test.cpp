#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "iid/errors.hpp"
#include "iid/sweep.hpp"
#include "iid/transforms.hpp"
#include "iid/validate.hpp"
#include "testutil.hpp"

using iid::ConditionalMode;
using iid::SweepKind;
using iid::SweepSpec;

namespace {

// Rows grouped by (level, r) for cross-mode and cross-level comparisons.
std::map<std::pair<double, double>, double> by_grid_point(
    const std::vector<iid::SweepRow>& rows) {
  std::map<std::pair<double, double>, double> out;
  for (const auto& row : rows) {
    if (row.valid) out[{row.b_y, row.r_y}] = row.output_range;
  }
  return out;
}

}  // namespace

TEST_CASE("default conditional rows") {
  const auto exact = iid::default_conditionals(ConditionalMode::Exact);
  CHECK(exact.given_y1 == iid::BoundVector({0.8, 0.2}));
  CHECK(exact.given_y2 == iid::BoundVector({0.3, 0.7}));
  const auto bounded = iid::default_conditionals(ConditionalMode::Bounded);
  CHECK(bounded.given_y1 == iid::BoundVector({0.7, 0.1}));
  CHECK(bounded.given_y2 == iid::BoundVector({0.2, 0.6}));
}

TEST_CASE("the swept diagram pins the level and slack on the predecessor") {
  const auto rows = iid::default_conditionals(ConditionalMode::Exact);
  const auto d = iid::sweep_diagram(0.3, 0.4, rows);
  CHECK(iid::validate_diagram(d).ok());
  const auto& b_y = d.node("Y").table.at_index(0);
  CHECK(b_y[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(b_y[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(iid::range(b_y) == doctest::Approx(0.4).epsilon(1e-12));

  CHECK_THROWS_AS((void)iid::sweep_diagram(0.4, 0.7, rows),
                  iid::PreconditionError);
}

TEST_CASE("the default removal sweep is linear in the input range") {
  SweepSpec spec;
  spec.kind = SweepKind::Removal;
  const auto rows = iid::run_sweep(spec);

  // Levels 0, .1, .2, .3, .4 with r stepping by .05 up to 1 - 2*level:
  // 21 + 17 + 13 + 9 + 5 grid points.
  CHECK(rows.size() == 65);

  // Slope 1 - (min_y p(x1|y) + min_y p(x2|y)) = 1 - (.3 + .2).
  const double slope = 0.5;
  for (const auto& row : rows) {
    REQUIRE(row.valid);
    CHECK(std::abs(row.output_range - slope * row.r_y) <= 1e-12);
    CHECK(row.output_range >= 0.0);
    CHECK(row.output_range <= 1.0);
  }
}

TEST_CASE("removal output ranges depend only on the input range") {
  SweepSpec spec;
  spec.kind = SweepKind::Removal;
  const auto rows = iid::run_sweep(spec);
  std::map<double, double> by_r;
  for (const auto& row : rows) {
    const auto found = by_r.find(row.r_y);
    if (found == by_r.end()) {
      by_r[row.r_y] = row.output_range;
    } else {
      CHECK(std::abs(found->second - row.output_range) <= 1e-12);
    }
  }
}

TEST_CASE("reversal sweep spot values") {
  SweepSpec spec;
  spec.kind = SweepKind::Reversal;
  const auto rows = iid::run_sweep(spec);
  CHECK(rows.size() == 65);

  for (const auto& row : rows) {
    REQUIRE(row.valid);
    if (row.r_y == 0.0) {
      // Exact in, exact out.
      CHECK(row.output_range == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(row.output_range >= 0.0);
    CHECK(row.output_range <= 1.0);
    if (row.b_y == 0.2 && std::abs(row.r_y - 0.3) < 1e-12) {
      // By hand: b(y|x1) = (.16/.4, .15/.55), so the width is 18/55.
      CHECK(row.output_range == doctest::Approx(18.0 / 55.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("reversal rows agree with a direct reversal of the same diagram") {
  SweepSpec spec;
  spec.kind = SweepKind::Reversal;
  spec.levels = {0.1, 0.3};
  const auto rows = iid::run_sweep(spec);
  const auto conditionals = iid::default_conditionals(ConditionalMode::Exact);
  for (const auto& row : rows) {
    REQUIRE(row.valid);
    const auto d = iid::sweep_diagram(row.b_y, row.r_y, conditionals);
    const auto reversed = iid::reverse_arc(d, "Y", "X");
    const auto& given_x1 = reversed.node("Y").table.at_index(0);
    // The emitted width equals 1 - sum(b(y|x1)) recomputed from the table.
    CHECK(row.output_range ==
          doctest::Approx(1.0 - given_x1.sum()).epsilon(1e-12));
    CHECK(row.output_range ==
          doctest::Approx(iid::range(given_x1)).epsilon(1e-12));
  }
}

TEST_CASE("bounded conditionals widen every output") {
  for (const SweepKind kind : {SweepKind::Removal, SweepKind::Reversal}) {
    SweepSpec exact_spec;
    exact_spec.kind = kind;
    SweepSpec bounded_spec = exact_spec;
    bounded_spec.mode = ConditionalMode::Bounded;

    const auto exact = by_grid_point(iid::run_sweep(exact_spec));
    const auto bounded = by_grid_point(iid::run_sweep(bounded_spec));
    REQUIRE(exact.size() == bounded.size());
    for (const auto& [point, exact_range] : exact) {
      const auto found = bounded.find(point);
      REQUIRE(found != bounded.end());
      CHECK(found->second >= exact_range - 1e-12);
    }
  }
}

TEST_CASE("infeasible grid points are kept with a diagnostic") {
  SweepSpec spec;
  spec.kind = SweepKind::Removal;
  spec.levels = {0.3};
  spec.range_grid = std::vector<double>{0.2, 0.9};
  const auto rows = iid::run_sweep(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].valid);
  CHECK_FALSE(rows[1].valid);  // 1 - .3 - .9 < 0
  CHECK(rows[1].diagnostic == "infeasible");
}

TEST_CASE("both sweeps back to back") {
  const auto rows = iid::default_sweep(ConditionalMode::Exact);
  CHECK(rows.size() == 130);
  CHECK(rows.front().kind == SweepKind::Removal);
  CHECK(rows.back().kind == SweepKind::Reversal);
}

TEST_CASE("csv serialization") {
  CHECK(iid::csv_header() == "kind,b_y,r_y,output_range,conditional_mode");

  SweepSpec spec;
  spec.kind = SweepKind::Reversal;
  spec.levels = {0.2};
  spec.range_grid = std::vector<double>{0.3, 0.9};
  std::ostringstream out;
  iid::write_csv(out, iid::run_sweep(spec));
  const std::string text = out.str();
  CHECK(text.find("kind,b_y,r_y,output_range,conditional_mode\n") == 0);
  CHECK(text.find("reversal,0.2,0.3,0.327272727273,exact") != std::string::npos);
  CHECK(text.find("reversal,0.2,0.9,infeasible,exact") != std::string::npos);
}
