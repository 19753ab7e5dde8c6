#pragma once

#include "vctl/core/control.hpp"
#include "vctl/forward/objective.hpp"
#include "vctl/sensitivity/adjoint.hpp"

namespace vctl {

/// Euclidean gradient of the discrete reduced objective with respect to u_j(t_k):
/// 1/2 sum over the adjacent half steps of <control sensitivity, z_j> plus the
/// exact regularisation derivative.
ControlTrajectory assemble_gradient(const AdjointResult& adjoint, const ControlTrajectory& u,
                                    const ControlModel& model, const ObjectiveWeights& weights, double dt);

/// Tracking part only (linear in the adjoint sensitivities).
ControlTrajectory tracking_gradient(const AdjointResult& adjoint, const ControlModel& model, int times);

}  // namespace vctl
