#include "vctl/core/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace vctl {

Distribution::Distribution(const PhaseGrid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

void Distribution::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

void Distribution::axpy(double a, const Distribution& other) {
  const double* o = other.values_.data();
  double* v = values_.data();
  for (std::size_t k = 0, n = values_.size(); k < n; ++k) v[k] += a * o[k];
}

void Distribution::scale(double a) {
  for (double& v : values_) v *= a;
}

double Distribution::min_value() const {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

double Distribution::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace vctl
