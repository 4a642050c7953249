#pragma once

#include <cstddef>
#include <vector>

namespace iid {

/// Absolute tolerance on the "lower bounds sum to at most one" check.
/// Admits decimal literals that round a hair past one after parsing.
inline constexpr double kValidateEps = 1e-9;

/// Lower bounds b(x_i) over the outcomes of one node in one conditioning
/// context. Upper bounds and the common interval width are always derived,
/// never stored: a vector summing to one is an exact distribution.
class BoundVector {
 public:
  BoundVector() = default;
  explicit BoundVector(std::vector<double> lower) : lower_(std::move(lower)) {}

  std::size_t size() const { return lower_.size(); }
  bool empty() const { return lower_.empty(); }
  double operator[](std::size_t i) const { return lower_[i]; }
  const std::vector<double>& values() const { return lower_; }

  double sum() const;

  bool is_valid() const;
  /// Throws ValidationError naming the violated invariant.
  void ensure_valid() const;

  friend bool operator==(const BoundVector&, const BoundVector&) = default;

 private:
  std::vector<double> lower_;
};

/// Closed probability interval [lo, hi].
struct ProbInterval {
  double lo = 0.0;
  double hi = 1.0;

  friend bool operator==(const ProbInterval&, const ProbInterval&) = default;
};

/// Common width of every outcome interval: 1 - sum(b), clamped at zero when
/// rounding pushes a context's sum a hair past one. Validates the input.
double range(const BoundVector& bv);

/// Sharp upper bounds U_i = 1 - sum_{j != i} b_j, computed as b_i + range(b)
/// so that U_i - b_i is identical across outcomes. Validates the input.
std::vector<double> upper_bounds(const BoundVector& bv);

}  // namespace iid
