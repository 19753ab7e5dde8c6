#include "vctl/sensitivity/adjoint.hpp"

#include <numbers>

#include "vctl/core/moments.hpp"
#include "vctl/core/parallel.hpp"
#include "vctl/maxwell/maxwell.hpp"

namespace vctl {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// a_f(x, p) += scale * 4 pi dp^2 (v1 a1(x) + v2 a2(x)): transpose of current_density.
void add_current_transpose(Distribution& af, const SpatialVector& a, double scale, const MomentumTables& t) {
  const PhaseGrid& g = af.grid();
  const double w = scale * kFourPi * g.dp() * g.dp();
  parallel_for(0, g.cells(), [&](std::size_t c) {
    auto block = af.cell_block(c);
    const double a1 = w * a.c1.v[c];
    const double a2 = w * a.c2.v[c];
    if (a1 == 0.0 && a2 == 0.0) return;
    for (std::size_t m = 0; m < block.size(); ++m) block[m] += t.v1[m] * a1 + t.v2[m] * a2;
  });
}

// a_f(x, p) += 4 pi dp^2 load(x): transpose of charge_density.
void add_charge_transpose(Distribution& af, const SpatialScalar& load) {
  const PhaseGrid& g = af.grid();
  const double w = kFourPi * g.dp() * g.dp();
  parallel_for(0, g.cells(), [&](std::size_t c) {
    const double v = w * load.v[c];
    if (v == 0.0) return;
    for (double& x : af.cell_block(c)) x += v;
  });
}

void add_tracking_load(Distribution& af, const ForwardRun& base, const TargetDensity& target, int n, double weight) {
  const double area = base.grid.dx() * base.grid.dx();
  SpatialScalar load(base.grid.nx);
  for (std::size_t k = 0; k < load.v.size(); ++k)
    load.v[k] = weight * area * (base.rho[n].v[k] - target.rho[n].v[k]);
  add_charge_transpose(af, load);
}

AdjointState density_form(const Distribution& af, const FieldState& a_fields, double dx, double dp) {
  AdjointState s{af, a_fields};
  s.g.scale(-1.0 / (dx * dx * dp * dp));
  s.h.scale(-1.0 / (dx * dx));
  return s;
}

}  // namespace

AdjointResult solve_adjoint(const ForwardRun& base, const TargetDensity& target, const ObjectiveWeights& weights,
                            const AdjointOptions& options) {
  const PhaseGrid& g = base.grid;
  const double dt = g.dt;
  const double dx = g.dx();
  const double dp = g.dp();
  const int nx = g.nx;
  const auto w = trapezoid_weights(g.nt, dt);
  const MomentumTables tables = momentum_tables(g);
  TrajectoryReader reader(base);
  const StepOperators ops(g);

  AdjointResult out;
  out.control_sensitivity.assign(g.nt, FaceVector(nx));

  Distribution af(g);
  FieldState a_fields(nx);  // cotangents of E^{n+1} and B^{n+3/2}
  Distribution f_star(g);
  Distribution f_star_star(g);
  Distribution af_star(g);
  Distribution af_star_star(g);
  Distribution scratch(g);
  CellForces a_k(nx);

  if (weights.tracking) add_tracking_load(af, base, target, g.nt, w[g.nt]);
  if (options.observer) options.observer(g.nt, density_form(af, a_fields, dx, dp));

  for (int n = g.nt - 1; n >= 0; --n) {
    if (!weights.tracking) break;
    reader.stages(n, f_star, f_star_star);
    const CellForces& k = base.forces[n];

    // B^{n+3/2} = B^{n+1/2} - dt curl E^{n+1}
    std::vector<double> a_b = a_fields.b;
    FaceVector a_e = a_fields.e;
    a_e.axpy(-dt, curl_b_to_faces(a_fields.b, nx, dx));

    // E^{n+1} = E^n + dt (curl B^{n+1/2} - J_flux - U)
    FaceVector a_e_prev = a_e;
    {
      const auto c = curl_e_to_nodes(a_e, dx);
      for (std::size_t q = 0; q < a_b.size(); ++q) a_b[q] += dt * c[q];
    }
    FaceVector a_flux = a_e;
    a_flux.scale(-dt);
    FaceVector& a_u = out.control_sensitivity[n];
    a_u = a_flux;

    // f^{n+1} = Sx f** together with the second half of J_flux
    ops.half_shift.apply_transpose(af, a_flux, ops.current_scale, af_star_star, scratch);

    // f** = Sp[K] f*
    ops.momentum.apply_adjoint(f_star, af_star_star, k, dt, af_star, a_k);

    // K = (Pc E_pred, Pn B^{n+1/2})
    FaceVector a_pred;
    std::vector<double> a_b_from_k;
    cell_forces_transpose(a_k, a_pred, a_b_from_k);
    for (std::size_t q = 0; q < a_b.size(); ++q) a_b[q] += a_b_from_k[q];

    // E_pred = E^n + dt/2 (curl B^{n+1/2} - D j* - U)
    a_e_prev.axpy(1.0, a_pred);
    {
      const auto c = curl_e_to_nodes(a_pred, dx);
      for (std::size_t q = 0; q < a_b.size(); ++q) a_b[q] += 0.5 * dt * c[q];
    }
    a_u.axpy(-0.5 * dt, a_pred);
    const SpatialVector a_jstar = faces_to_centers(a_pred);
    add_current_transpose(af_star, a_jstar, -0.5 * dt, tables);

    // f* = Sx f^n together with the first half of J_flux
    ops.half_shift.apply_transpose(af_star, a_flux, ops.current_scale, af, scratch);
    add_tracking_load(af, base, target, n, w[n]);

    a_fields.e = std::move(a_e_prev);
    a_fields.b = std::move(a_b);
    if (options.observer) options.observer(n, density_form(af, a_fields, dx, dp));
  }
  out.initial = density_form(af, a_fields, dx, dp);
  return out;
}

}  // namespace vctl
