#pragma once

#include <vector>

#include "vctl/core/control.hpp"
#include "vctl/core/field_state.hpp"
#include "vctl/forward/simulation.hpp"

namespace vctl {

/// Regularisation weights beta, beta1, beta2; `tracking` switches the density term.
struct ObjectiveWeights {
  double beta = 1e-3;
  double beta1 = 1e-5;
  double beta2 = 1e-10;
  bool tracking = true;
};

/// Desired charge density rho_d at every time level t_0..t_nt.
struct TargetDensity {
  std::vector<SpatialScalar> rho;
};

struct ObjectiveValue {
  double tracking = 0.0;
  double regularization = 0.0;
  double total() const { return tracking + regularization; }
};

/// Trapezoid weights on t_0..t_nt (dt/2 at both ends).
std::vector<double> trapezoid_weights(int nt, double dt);

/// 1/2 sum_n w_n dx^2 sum_x (rho^n - rho_d^n)^2.
double tracking_term(const std::vector<SpatialScalar>& rho, const TargetDensity& target, const PhaseGrid& grid);

/// beta/2 sum_j c_j (sum_k w_k u_k^2 + beta1 sum_k dt (D1 u)_k^2 + beta2 sum_k dt (D2 u)_k^2)
/// with forward differences D1 u = (u_{k+1} - u_k)/dt and D2 u = (u_{k+1} - 2u_k + u_{k-1})/dt^2.
double regularization_term(const ControlTrajectory& u, const ControlModel& model, const ObjectiveWeights& w,
                           double dt);
/// Exact derivative of regularization_term.
ControlTrajectory regularization_gradient(const ControlTrajectory& u, const ControlModel& model,
                                          const ObjectiveWeights& w, double dt);

ObjectiveValue objective_eval(const ForwardRun& run, const ControlTrajectory& u, const ControlModel& model,
                              const TargetDensity& target, const ObjectiveWeights& w);

/// rho_d taken from a finished run (twin experiments, tracking-off checks).
TargetDensity target_from_run(const ForwardRun& run);
TargetDensity zero_target(const PhaseGrid& grid);

}  // namespace vctl
