#pragma once

#include <span>

#include "vctl/core/distribution.hpp"

namespace vctl {

/// Four-point Lagrange weights for a point at fractional offset alpha in
/// [0, 1) past node 0, applied to nodes -1, 0, 1, 2. Exact on cubics.
struct CubicWeights {
  double w[4];
};
CubicWeights cubic_weights(double alpha);
/// d/d(alpha) of cubic_weights.
CubicWeights cubic_weight_derivatives(double alpha);

/// Interpolates samples v at continuous index position s (sample k sits at s = k).
/// Taps outside [0, v.size()) read as zero.
double interpolate_line(std::span<const double> v, double s);

/// Separable cubic interpolation of f at phase point (x, p); zero outside the box.
double interpolate4(const Distribution& f, const Vec2& x, const Vec2& p);

}  // namespace vctl
