#include "vctl/sensitivity/tangent.hpp"

#include "vctl/core/moments.hpp"
#include "vctl/maxwell/maxwell.hpp"

namespace vctl {

TangentResult solve_tangent(const ForwardRun& base, const ControlModel& model, const ControlTrajectory& du) {
  const PhaseGrid& g = base.grid;
  const double dt = g.dt;
  const double dx = g.dx();
  TrajectoryReader reader(base);
  const StepOperators ops(g);

  TangentResult out;
  out.drho.reserve(g.nt + 1);
  out.dfields.reserve(g.nt + 1);
  Distribution df(g);
  FieldState dfields(g.nx);
  Distribution f_star(g);
  Distribution f_star_star(g);
  Distribution df_star(g);
  Distribution df_star_star(g);
  Distribution scratch(g);

  out.drho.push_back(SpatialScalar(g.nx));
  out.dfields.push_back(dfields);
  for (int n = 0; n < g.nt; ++n) {
    reader.stages(n, f_star, f_star_star);
    const FaceVector dU = model.assemble(du.at_half_step(n));
    const FaceVector curl_db = curl_b_to_faces(dfields.b, g.nx, dx);

    FaceVector total(g.nx);
    ops.half_shift.apply(df, df_star, scratch, ops.current_scale, total);
    const SpatialVector dj_star = current_density(df_star);
    FaceVector de_pred = dfields.e;
    const FaceVector dj_star_faces = deposit_to_faces(dj_star);
    for (std::size_t k = 0; k < de_pred.c1.size(); ++k) {
      de_pred.c1[k] += 0.5 * dt * (curl_db.c1[k] - dj_star_faces.c1[k] - dU.c1[k]);
      de_pred.c2[k] += 0.5 * dt * (curl_db.c2[k] - dj_star_faces.c2[k] - dU.c2[k]);
    }
    const CellForces dk = cell_forces(de_pred, dfields.b);
    ops.momentum.apply_tangent(f_star, df_star, base.forces[n], dk, dt, df_star_star);

    ops.half_shift.apply(df_star_star, df, scratch, ops.current_scale, total);
    total.axpy(1.0, dU);
    maxwell_step_in_place(dfields, total, dt, dx);

    out.drho.push_back(charge_density(df));
    out.dfields.push_back(dfields);
  }
  out.final_state = TangentState{std::move(df), std::move(dfields)};
  return out;
}

double tracking_derivative(const ForwardRun& base, const TargetDensity& target, const TangentResult& tangent) {
  const PhaseGrid& g = base.grid;
  const auto w = trapezoid_weights(g.nt, g.dt);
  const double area = g.dx() * g.dx();
  double s = 0.0;
  for (int n = 0; n <= g.nt; ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < tangent.drho[n].v.size(); ++k)
      acc += (base.rho[n].v[k] - target.rho[n].v[k]) * tangent.drho[n].v[k];
    s += w[n] * area * acc;
  }
  return s;
}

}  // namespace vctl
