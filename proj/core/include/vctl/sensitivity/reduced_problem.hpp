#pragma once

#include <memory>

#include "vctl/core/control.hpp"
#include "vctl/forward/objective.hpp"
#include "vctl/forward/simulation.hpp"
#include "vctl/sensitivity/tangent.hpp"

namespace vctl {

/// Objective value and (optionally) gradient at one control.
struct Evaluation {
  ObjectiveValue value;
  ControlTrajectory gradient;
  bool has_gradient = false;
};

/// Interface consumed by the optimiser.
class ReducedObjective {
 public:
  virtual ~ReducedObjective() = default;
  virtual Evaluation evaluate(const ControlTrajectory& u, bool with_gradient) = 0;
};

/// phi(u) = objective of the controlled run, with adjoint gradients.
class ReducedProblem : public ReducedObjective {
 public:
  ReducedProblem(InitialData init, ControlModel model, TargetDensity target, ObjectiveWeights weights,
                 ForwardOptions options = {});

  Evaluation evaluate(const ControlTrajectory& u, bool with_gradient) override;
  ForwardRun forward(const ControlTrajectory& u) const;
  /// Directional derivative from the tangent solve around u.
  double tangent_derivative(const ControlTrajectory& u, const ControlTrajectory& direction) const;

  const PhaseGrid& grid() const { return init_.f0.grid(); }
  const InitialData& initial_data() const { return init_; }
  const ControlModel& model() const { return model_; }
  const TargetDensity& target() const { return target_; }
  const ObjectiveWeights& weights() const { return weights_; }
  ObjectiveWeights& weights() { return weights_; }
  ForwardOptions& options() { return options_; }
  int forward_solves() const { return forward_solves_; }
  int adjoint_solves() const { return adjoint_solves_; }

 private:
  InitialData init_;
  ControlModel model_;
  TargetDensity target_;
  ObjectiveWeights weights_;
  ForwardOptions options_;
  mutable int forward_solves_ = 0;
  int adjoint_solves_ = 0;
};

/// Central difference (phi(u + eps d) - phi(u - eps d)) / (2 eps).
double fd_gradient(ReducedObjective& problem, const ControlTrajectory& u, const ControlTrajectory& direction,
                   double eps);

}  // namespace vctl
