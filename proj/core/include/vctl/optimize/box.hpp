#pragma once

#include "vctl/core/control.hpp"

namespace vctl {

/// Pointwise clamp of every u_j(t_k) to [-1, 1].
ControlTrajectory project_box(const ControlTrajectory& u);

/// ||u - P(u - grad)||, zero exactly at box-stationary points.
double projected_gradient_norm(const ControlTrajectory& u, const ControlTrajectory& grad);

}  // namespace vctl
