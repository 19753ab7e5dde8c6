#pragma once

#include "vctl/core/field_state.hpp"

namespace vctl {

struct PoissonResult {
  SpatialScalar phi;
  int iterations = 0;
  double residual = 0.0;
  /// Mean of the right-hand side removed before solving.
  double removed_mean = 0.0;
};

/// Solves the five-point Neumann problem -Lap phi = rhs - mean(rhs) by
/// conjugate gradients until ||r|| <= tolerance * ||rhs||.
PoissonResult solve_poisson_neumann(const SpatialScalar& rhs, double dx, double tolerance = 1e-10,
                                    int max_iterations = 20000);

/// E = -grad phi on interior faces; boundary faces carry zero flux.
FaceVector negative_gradient(const SpatialScalar& phi, double dx);

}  // namespace vctl
