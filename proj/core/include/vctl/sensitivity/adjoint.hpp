#pragma once

#include <functional>
#include <vector>

#include "vctl/forward/objective.hpp"
#include "vctl/forward/simulation.hpp"

namespace vctl {

/// Adjoint variables (g, h1, h2, h3) at one time level in density form:
/// g on the phase grid, (h1, h2) on faces and h3 on nodes.
struct AdjointState {
  Distribution g;
  FieldState h;
};

struct AdjointResult {
  /// Sensitivity of the tracking term to the control current U^{n+1/2},
  /// as a plain (unweighted) face vector for n = 0..nt-1.
  std::vector<FaceVector> control_sensitivity;
  /// State at t = 0 after the backward sweep (zero at t = T by construction).
  AdjointState initial;
};

struct AdjointOptions {
  /// Called at every level n = nt..0 with the current adjoint state.
  std::function<void(int n, const AdjointState&)> observer;
};

/// Backward sweep from T to 0 for the tracking term of the objective.
///
/// Each step is the transpose of the corresponding forward step: g is
/// carried by the transposed semi-Lagrangian shifts, driven by
/// 4 pi (rho - rho_d) and by 4 pi v . h through the current deposition, while
/// h is driven by the momentum moments of g d_p f through the force
/// coupling. With tracking switched off the result is identically zero.
AdjointResult solve_adjoint(const ForwardRun& base, const TargetDensity& target, const ObjectiveWeights& weights,
                            const AdjointOptions& options = {});

}  // namespace vctl
