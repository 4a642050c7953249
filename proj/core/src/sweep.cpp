#include "iid/sweep.hpp"

#include <cstdio>

#include "iid/errors.hpp"
#include "iid/transforms.hpp"

namespace iid {

namespace {

constexpr double kGridSlop = 1e-12;

const char* kind_token(SweepKind kind) {
  return kind == SweepKind::Removal ? "removal" : "reversal";
}

const char* mode_token(ConditionalMode mode) {
  return mode == ConditionalMode::Exact ? "exact" : "bounded";
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> grid_for_level(const SweepSpec& spec, double level) {
  if (spec.range_grid) return *spec.range_grid;
  if (spec.r_step <= 0.0) {
    throw PreconditionError("sweep step must be positive");
  }
  // Stop where the second lower bound would drop below the first, so the
  // pinned outcome stays the smaller of the two.
  const double limit = 1.0 - 2.0 * level;
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double r = k * spec.r_step;
    if (r > limit + kGridSlop) break;
    grid.push_back(r);
  }
  return grid;
}

}  // namespace

ConditionalSpec default_conditionals(ConditionalMode mode) {
  if (mode == ConditionalMode::Exact) {
    return {BoundVector({0.8, 0.2}), BoundVector({0.3, 0.7})};
  }
  return {BoundVector({0.7, 0.1}), BoundVector({0.2, 0.6})};
}

InfluenceDiagram sweep_diagram(double level, double r_y,
                               const ConditionalSpec& rows) {
  double second = 1.0 - level - r_y;
  if (second < 0.0 && second > -kGridSlop) second = 0.0;  // grid-edge rounding
  if (level < 0.0 || r_y < 0.0 || second < 0.0) {
    throw PreconditionError("lower bounds (" + format_number(level) + ", " +
                            format_number(second) + ") are infeasible");
  }
  Node y{OutcomeSpace{"Y", {"y1", "y2"}},
         LowerBoundTable::root("Y", BoundVector({level, second}))};
  Node x{OutcomeSpace{"X", {"x1", "x2"}},
         LowerBoundTable("X", {"Y"}, {2}, {rows.given_y1, rows.given_y2})};
  return InfluenceDiagram({std::move(y), std::move(x)});
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  const ConditionalSpec rows =
      spec.conditionals ? *spec.conditionals : default_conditionals(spec.mode);
  std::vector<SweepRow> out;
  for (double level : spec.levels) {
    for (double r : grid_for_level(spec, level)) {
      SweepRow row;
      row.kind = spec.kind;
      row.mode = spec.mode;
      row.b_y = level;
      row.r_y = r;
      try {
        const InfluenceDiagram d = sweep_diagram(level, r, rows);
        if (spec.kind == SweepKind::Removal) {
          const InfluenceDiagram reduced = remove_node(d, "Y");
          row.output_range = range(reduced.node("X").table.at_index(0));
        } else {
          const InfluenceDiagram reversed = reverse_arc(d, "Y", "X");
          // Context 0 is X = x1: the observation the sweep conditions on.
          row.output_range = range(reversed.node("Y").table.at_index(0));
        }
      } catch (const PreconditionError&) {
        row.valid = false;
        row.diagnostic = "infeasible";
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::vector<SweepRow> default_sweep(ConditionalMode mode) {
  SweepSpec spec;
  spec.mode = mode;
  spec.kind = SweepKind::Removal;
  std::vector<SweepRow> rows = run_sweep(spec);
  spec.kind = SweepKind::Reversal;
  std::vector<SweepRow> reversal = run_sweep(spec);
  rows.insert(rows.end(), reversal.begin(), reversal.end());
  return rows;
}

std::string csv_header() { return "kind,b_y,r_y,output_range,conditional_mode"; }

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& row : rows) {
    out << kind_token(row.kind) << ',' << format_number(row.b_y) << ','
        << format_number(row.r_y) << ','
        << (row.valid ? format_number(row.output_range) : row.diagnostic)
        << ',' << mode_token(row.mode) << '\n';
  }
}

}  // namespace iid
