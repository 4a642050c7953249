#include "iid/bounds.hpp"

#include <cmath>
#include <string>

#include "iid/errors.hpp"

namespace iid {

double BoundVector::sum() const {
  double s = 0.0;
  for (double v : lower_) s += v;
  return s;
}

bool BoundVector::is_valid() const {
  for (double v : lower_) {
    if (!std::isfinite(v) || v < 0.0) return false;
  }
  return sum() <= 1.0 + kValidateEps;
}

void BoundVector::ensure_valid() const {
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i])) {
      throw ValidationError("bound vector entry " + std::to_string(i) +
                            " is not finite");
    }
    if (lower_[i] < 0.0) {
      throw ValidationError("bound vector entry " + std::to_string(i) +
                            " is negative: " + std::to_string(lower_[i]));
    }
  }
  const double s = sum();
  if (s > 1.0 + kValidateEps) {
    throw ValidationError("bound vector entries sum to " + std::to_string(s) +
                          " which exceeds 1");
  }
}

double range(const BoundVector& bv) {
  bv.ensure_valid();
  const double r = 1.0 - bv.sum();
  return r > 0.0 ? r : 0.0;
}

std::vector<double> upper_bounds(const BoundVector& bv) {
  const double r = range(bv);
  std::vector<double> upper(bv.size());
  for (std::size_t i = 0; i < bv.size(); ++i) upper[i] = bv[i] + r;
  return upper;
}

}  // namespace iid
