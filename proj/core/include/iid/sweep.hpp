#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "iid/bounds.hpp"
#include "iid/diagram.hpp"

namespace iid {

// Parameter sweeps over a two-node diagram Y -> X (both binary) that track
// how the interval width of Y's bounds propagates through one structural
// transformation. Each grid point sets Y's lower bounds to
// (level, 1 - level - r): the first outcome pinned at `level`, the rest of
// the mass minus the slack `r` on the second.

enum class SweepKind { Removal, Reversal };

/// Whether X's conditional rows are exact distributions (width zero) or
/// carry slack of their own.
enum class ConditionalMode { Exact, Bounded };

/// The two conditional rows b(x | y1) and b(x | y2) of the swept diagram.
struct ConditionalSpec {
  BoundVector given_y1;
  BoundVector given_y2;
};

/// Built-in rows: exact ones split (0.8, 0.2) / (0.3, 0.7); the bounded
/// variant keeps the same midpoints with 0.2 of slack per row.
ConditionalSpec default_conditionals(ConditionalMode mode);

struct SweepSpec {
  SweepKind kind = SweepKind::Removal;
  ConditionalMode mode = ConditionalMode::Exact;
  /// Values taken by Y's first lower bound.
  std::vector<double> levels = {0.0, 0.1, 0.2, 0.3, 0.4};
  /// Explicit slack grid; when absent, 0 .. (1 - 2 * level) in r_step
  /// increments, stopping where the second lower bound would drop below
  /// the first.
  std::optional<std::vector<double>> range_grid;
  double r_step = 0.05;
  /// Overrides the rows chosen by `mode`.
  std::optional<ConditionalSpec> conditionals;
};

/// One grid point. For removals output_range is the width of X's marginal
/// intervals after Y is removed; for reversals it is the width of Y's
/// posterior intervals given X = x1 after the arc is reversed. Grid points
/// whose lower bounds would be negative are kept with valid = false and a
/// diagnostic instead of a result.
struct SweepRow {
  SweepKind kind;
  double b_y = 0.0;
  double r_y = 0.0;
  double output_range = 0.0;
  ConditionalMode mode;
  bool valid = true;
  std::string diagnostic;
};

/// The swept diagram at one grid point: Y with bounds
/// (level, 1 - level - r_y), X conditioned on Y by the given rows.
/// Throws PreconditionError when the bounds would be infeasible.
InfluenceDiagram sweep_diagram(double level, double r_y,
                               const ConditionalSpec& rows);

/// Runs the grid for one sweep kind.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Removal and reversal sweeps back to back with the given mode's default
/// grid and rows.
std::vector<SweepRow> default_sweep(ConditionalMode mode);

/// Header line of the CSV serialization (no trailing newline).
std::string csv_header();

/// Writes the header plus one line per row. Infeasible rows carry their
/// diagnostic in the output_range column.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace iid
