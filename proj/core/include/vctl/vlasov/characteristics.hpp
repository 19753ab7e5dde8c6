#pragma once

#include <functional>

#include "vctl/core/field_state.hpp"
#include "vctl/core/grid.hpp"

namespace vctl {

/// Field values E(t, x), B(t, x) at arbitrary space-time points.
using FieldSampler = std::function<PointField(double t, const Vec2& x)>;

/// K(t, x, p) = E - v(p)^perp B built from a field sampler.
struct ForceField {
  FieldSampler fields;

  Vec2 operator()(double t, const Vec2& x, const Vec2& p) const;
  /// Central-difference div_p K with step h; zero analytically.
  double momentum_divergence(double t, const Vec2& x, const Vec2& p, double h) const;
};

/// Linear-in-time interpolation between two field states with bilinear interpolation in space.
FieldSampler field_timeline(const PhaseGrid& grid, const FieldState& at_t0, double t0, const FieldState& at_t1,
                            double t1);
/// Spatially constant fields.
FieldSampler uniform_fields(const Vec2& e, double b);

struct PhasePoint {
  Vec2 x;
  Vec2 p;
};

struct TraceResult {
  PhasePoint end;
  /// The path left the momentum box |p_i| <= p_extent.
  bool escaped = false;
};

/// Integrates dX/ds = v(P), dP/ds = K(s, X, P) from t_from to t_to (either
/// direction) with the explicit midpoint rule on `substeps` equal steps.
TraceResult trace_characteristic(double t_from, double t_to, const PhasePoint& start, const ForceField& force,
                                 const PhaseGrid& grid, int substeps = 1);

}  // namespace vctl
