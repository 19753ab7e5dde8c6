#include "vctl/sensitivity/reduced_problem.hpp"

#include "vctl/sensitivity/adjoint.hpp"
#include "vctl/sensitivity/gradient.hpp"

namespace vctl {

ReducedProblem::ReducedProblem(InitialData init, ControlModel model, TargetDensity target, ObjectiveWeights weights,
                               ForwardOptions options)
    : init_(std::move(init)),
      model_(std::move(model)),
      target_(std::move(target)),
      weights_(weights),
      options_(std::move(options)) {}

ForwardRun ReducedProblem::forward(const ControlTrajectory& u) const {
  ++forward_solves_;
  return run_forward(init_, model_, u, options_);
}

Evaluation ReducedProblem::evaluate(const ControlTrajectory& u, bool with_gradient) {
  ForwardOptions opt = options_;
  opt.store_snapshots = with_gradient && weights_.tracking;
  ++forward_solves_;
  const ForwardRun run = run_forward(init_, model_, u, opt);
  Evaluation e;
  e.value = objective_eval(run, u, model_, target_, weights_);
  if (with_gradient) {
    AdjointResult adj;
    if (weights_.tracking) {
      adj = solve_adjoint(run, target_, weights_);
      ++adjoint_solves_;
    }
    e.gradient = assemble_gradient(adj, u, model_, weights_, grid().dt);
    e.has_gradient = true;
  }
  return e;
}

double ReducedProblem::tangent_derivative(const ControlTrajectory& u, const ControlTrajectory& direction) const {
  const ForwardRun run = forward(u);
  double d = 0.0;
  if (weights_.tracking) {
    const TangentResult t = solve_tangent(run, model_, direction);
    d += tracking_derivative(run, target_, t);
  }
  d += regularization_gradient(u, model_, weights_, grid().dt).dot(direction);
  return d;
}

double fd_gradient(ReducedObjective& problem, const ControlTrajectory& u, const ControlTrajectory& direction,
                   double eps) {
  ControlTrajectory up = u;
  up.axpy(eps, direction);
  ControlTrajectory um = u;
  um.axpy(-eps, direction);
  const double fp = problem.evaluate(up, false).value.total();
  const double fm = problem.evaluate(um, false).value.total();
  return (fp - fm) / (2.0 * eps);
}

}  // namespace vctl
