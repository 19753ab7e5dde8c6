#pragma once

#include "vctl/core/control.hpp"

namespace vctl {

/// Discrete first-order conditions of the box-constrained problem at u.
///
/// On inactive points the stationarity residual is |grad|. Where u = 1 the
/// multiplier is lambda+ = max(-grad, 0) and the residual max(grad, 0);
/// where u = -1 it is lambda- = max(grad, 0) with residual max(-grad, 0).
/// Points with |u| = 1 and grad = 0 count as inactive.
struct KKTReport {
  ControlTrajectory lambda_plus;
  ControlTrajectory lambda_minus;
  ControlTrajectory stationarity_field;
  double stationarity = 0.0;     // sup norm
  double complementarity = 0.0;  // sup of lambda+ (1 - u) and lambda- (u + 1)
  double feasibility = 0.0;      // sup of max(|u| - 1, 0)
};

KKTReport kkt_residuals(const ControlTrajectory& u, const ControlTrajectory& grad);

}  // namespace vctl
