#include "vctl/sensitivity/gradient.hpp"

namespace vctl {

ControlTrajectory tracking_gradient(const AdjointResult& adjoint, const ControlModel& model, int times) {
  ControlTrajectory g(model.coils(), times);
  const int steps = static_cast<int>(adjoint.control_sensitivity.size());
  for (int n = 0; n < steps; ++n) {
    const FaceVector& a = adjoint.control_sensitivity[n];
    for (int j = 0; j < model.coils(); ++j) {
      const FaceVector& z = model.profile(j);
      double s = 0.0;
      for (std::size_t k = 0; k < a.c1.size(); ++k) s += a.c1[k] * z.c1[k];
      for (std::size_t k = 0; k < a.c2.size(); ++k) s += a.c2[k] * z.c2[k];
      // U^{n+1/2} = sum_j (u_j^n + u_j^{n+1}) / 2 z_j
      g(j, n) += 0.5 * s;
      g(j, n + 1) += 0.5 * s;
    }
  }
  return g;
}

ControlTrajectory assemble_gradient(const AdjointResult& adjoint, const ControlTrajectory& u,
                                    const ControlModel& model, const ObjectiveWeights& weights, double dt) {
  ControlTrajectory g = regularization_gradient(u, model, weights, dt);
  if (weights.tracking && !adjoint.control_sensitivity.empty())
    g.axpy(1.0, tracking_gradient(adjoint, model, u.times()));
  return g;
}

}  // namespace vctl
