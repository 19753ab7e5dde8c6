#pragma once

#include <vector>

#include "vctl/core/control.hpp"
#include "vctl/forward/objective.hpp"
#include "vctl/forward/simulation.hpp"

namespace vctl {

/// Linearised state (df, dE, dB) at one time level.
struct TangentState {
  Distribution df;
  FieldState dfields;
};

struct TangentResult {
  /// rho(df^n) for n = 0..nt.
  std::vector<SpatialScalar> drho;
  /// dE^n and dB^{n+1/2} for n = 0..nt.
  std::vector<FieldState> dfields;
  TangentState final_state;
};

/// Solves the linearised system around a stored forward run for the control
/// perturbation du. The base coefficients (f, E, B) are frozen and the
/// source -(dE - v^perp dB) . d_p f enters through the momentum step.
TangentResult solve_tangent(const ForwardRun& base, const ControlModel& model, const ControlTrajectory& du);

/// Directional derivative of the tracking term: sum_n w_n dx^2 <rho^n - rho_d^n, drho^n>.
double tracking_derivative(const ForwardRun& base, const TargetDensity& target, const TangentResult& tangent);

}  // namespace vctl
