#include "vctl/forward/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vctl/core/error.hpp"
#include "vctl/core/moments.hpp"
#include "vctl/core/parallel.hpp"
#include "vctl/maxwell/poisson.hpp"

namespace vctl {

std::string to_string(BackgroundMode mode) { return mode == BackgroundMode::local ? "local" : "uniform"; }

BackgroundMode background_mode_from_string(const std::string& name) {
  if (name == "local") return BackgroundMode::local;
  if (name == "uniform") return BackgroundMode::uniform;
  throw ConfigError("unknown background mode '" + name + "' (expected local or uniform)");
}

InitialData make_initial_data(Distribution f0, BackgroundMode mode, const FieldState* extra, double field_radius) {
  InitialData init;
  const PhaseGrid& g = f0.grid();
  const double dx = g.dx();
  const SpatialScalar rho = charge_density(f0);
  init.fields = FieldState(g.nx);
  if (mode == BackgroundMode::local) {
    init.background = rho;
  } else {
    PoissonResult pr = solve_poisson_neumann(rho, dx);
    init.removed_mean = pr.removed_mean;
    init.background = SpatialScalar(g.nx, pr.removed_mean);
    init.fields.e = negative_gradient(pr.phi, dx);
  }
  if (extra) init.fields.axpy(1.0, *extra);
  const SupportRadii r = support_radii(f0);
  init.plasma_radius = r.x;
  init.momentum_radius = r.p;
  init.field_radius = field_radius;
  init.compatibility_residual = divergence_residual(init.fields, rho, init.background, SpatialScalar{}, dx);
  init.f0 = std::move(f0);
  return init;
}

namespace {

double max_force(const CellForces& k, const MomentumTables& t) {
  std::vector<double> partial(k.e1.v.size(), 0.0);
  parallel_for(0, partial.size(), [&](std::size_t c) {
    const double e1 = k.e1.v[c];
    const double e2 = k.e2.v[c];
    const double b = k.b.v[c];
    double m = 0.0;
    for (std::size_t q = 0; q < t.v1.size(); ++q) {
      const double k1 = e1 + t.v2[q] * b;
      const double k2 = e2 - t.v1[q] * b;
      m = std::max(m, k1 * k1 + k2 * k2);
    }
    partial[c] = m;
  });
  double m = 0.0;
  for (double v : partial) m = std::max(m, v);
  return std::sqrt(m);
}

DiagnosticRecord measure(const PhaseGrid& g, int n, const Distribution& f, const FieldState& fields,
                         const std::vector<double>& b_lagging, const FieldState& initial_fields,
                         const SpatialScalar& rho, const SpatialScalar& background,
                         const SpatialScalar& div_u_integral) {
  DiagnosticRecord d;
  const double dx = g.dx();
  d.step = n;
  d.time = g.time(n);
  d.mass = mass(f);
  d.l1 = lq_norm(f, Norm::l1);
  d.l2 = lq_norm(f, Norm::l2);
  d.linf = lq_norm(f, Norm::linf);
  d.min_value = f.min_value();
  d.field_energy = leapfrog_field_energy(fields.e, b_lagging, fields.b, dx);
  d.kinetic_energy = kinetic_energy(f);
  d.total_energy = d.field_energy + d.kinetic_energy;
  d.gauss_residual = divergence_residual(fields, rho, background, div_u_integral, dx);
  d.charge_norm = l2_norm(rho, dx);
  const SupportRadii r = support_radii(f);
  d.support_x = r.x;
  d.support_p = r.p;
  d.boundary_field = fields.boundary_deviation(initial_fields);
  d.momentum_boundary_mass = momentum_boundary_mass(f);
  return d;
}

void check_state(const PhaseGrid& g, const DiagnosticRecord& d, const Distribution& f, double f0_max,
                 const ForwardOptions& opt) {
  if (!std::isfinite(d.l1) || !std::isfinite(d.field_energy) || !std::isfinite(d.linf))
    throw NumericalError("non-finite values in the state", d.step);
  if (!opt.abort_on_escape) return;
  if (d.momentum_boundary_mass > opt.escape_tolerance * std::max(d.l1, 1e-300) && d.momentum_boundary_mass > 0.0)
    throw NumericalError("distribution reached the momentum boundary (escaped mass " +
                             std::to_string(d.momentum_boundary_mass) + ")",
                         d.step);
  const double rp = d.support_p > opt.momentum_fraction_limit * g.p_extent && f0_max > 0.0
                        ? support_radii(f, opt.escape_support_epsilon * f0_max).p
                        : d.support_p;
  if (rp > opt.momentum_fraction_limit * g.p_extent)
    throw NumericalError("momentum support " + std::to_string(rp) + " exceeds " +
                             std::to_string(opt.momentum_fraction_limit) + " of p_extent",
                         d.step);
  if (d.boundary_field > opt.boundary_field_limit)
    throw NumericalError("fields reached the outer layer (deviation " + std::to_string(d.boundary_field) + ")",
                         d.step);
}

void clip_negative(Distribution& f) {
  const double before = mass(f);
  for (double& v : f.values()) v = std::max(v, 0.0);
  const double after = mass(f);
  if (after > 0.0) f.scale(before / after);
}

}  // namespace

ForwardRun run_forward(const InitialData& init, const ControlModel& model, const ControlTrajectory& u,
                       const ForwardOptions& opt) {
  const PhaseGrid& g = init.f0.grid();
  g.validate();
  if (g.dt > maxwell_cfl_limit(g))
    throw ConfigError("dt = " + std::to_string(g.dt) + " violates the Maxwell CFL bound dt <= dx/sqrt(2) = " +
                      std::to_string(maxwell_cfl_limit(g)));
  if (u.times() != g.nt + 1 || u.coils() != model.coils())
    throw ConfigError("control trajectory shape does not match the coil model and time grid");
  if (opt.fixed_point_passes < 0 || opt.fixed_point_passes > 2)
    throw ConfigError("fixed_point_passes must be 0, 1 or 2");

  const double dt = g.dt;
  const double dx = g.dx();
  const StepOperators ops(g);
  const MomentumTables tables = momentum_tables(g);

  ForwardRun run;
  run.grid = g;
  run.background = init.background;
  if (opt.store_snapshots)
    run.snapshots = std::make_shared<SnapshotStore>(g, opt.snapshot_stride, opt.snapshot_mode, opt.snapshot_directory);
  run.forces.reserve(g.nt);
  run.rho.reserve(g.nt + 1);
  run.current.reserve(g.nt + 1);
  run.diagnostics.reserve(g.nt + 1);

  Distribution f = init.f0;
  const double f0_max = f.max_abs();
  Distribution f_star(g);
  Distribution f_star_star(g);
  Distribution scratch(g);
  FieldState fields = init.fields;
  run.fields.b_initial_lagging = initial_lagging_b(fields, dt, dx);
  start_leapfrog(fields, dt, dx);
  run.fields.states.reserve(g.nt + 1);
  SpatialScalar div_u(g.nx);

  auto record_level = [&](int n) {
    run.rho.push_back(charge_density(f));
    run.current.push_back(current_density(f));
    run.fields.states.push_back(fields);
    if (run.snapshots) run.snapshots->put(n, f);
    DiagnosticRecord d = measure(g, n, f, fields, run.fields.b_lagging(n), init.fields, run.rho.back(),
                                 init.background, div_u);
    check_state(g, d, f, f0_max, opt);
    run.diagnostics.push_back(d);
    if (opt.observer) opt.observer(SimulationState{n, f, fields, div_u});
  };

  record_level(0);
  Distribution f_next(g);
  for (int n = 0; n < g.nt; ++n) {
    const FaceVector U = model.assemble(u.at_half_step(n));
    const FaceVector curl_b = curl_b_to_faces(fields.b, g.nx, dx);

    FaceVector flux_a(g.nx);
    ops.half_shift.apply(f, f_star, scratch, ops.current_scale, flux_a);
    const SpatialVector j_star = current_density(f_star);

    FaceVector e_pred = fields.e;
    {
      const FaceVector jf = deposit_to_faces(j_star);
      for (std::size_t k = 0; k < e_pred.c1.size(); ++k) {
        e_pred.c1[k] += 0.5 * dt * (curl_b.c1[k] - jf.c1[k] - U.c1[k]);
        e_pred.c2[k] += 0.5 * dt * (curl_b.c2[k] - jf.c2[k] - U.c2[k]);
      }
    }
    CellForces forces = cell_forces(e_pred, fields.b);
    FieldState next;
    for (int pass = 0;; ++pass) {
      ops.momentum.apply(f_star, forces, dt, f_star_star);
      FaceVector total = flux_a;
      ops.half_shift.apply(f_star_star, f_next, scratch, ops.current_scale, total);
      total.axpy(1.0, U);
      next = fields;
      maxwell_step_in_place(next, total, dt, dx);
      if (pass >= opt.fixed_point_passes) break;
      FaceVector e_mid = fields.e;
      e_mid.axpy(1.0, next.e);
      e_mid.scale(0.5);
      forces = cell_forces(e_mid, fields.b);
    }
    run.diagnostics.back().max_force = max_force(forces, tables);
    run.forces.push_back(std::move(forces));
    std::swap(f, f_next);
    fields = std::move(next);
    if (opt.clip_negative) clip_negative(f);

    const SpatialScalar div_step = divergence(U, dx);
    for (std::size_t k = 0; k < div_u.v.size(); ++k) div_u.v[k] += dt * div_step.v[k];
    record_level(n + 1);
  }
  run.final_f = f;
  return run;
}

StepOperators::StepOperators(const PhaseGrid& grid)
    : half_shift(grid, 0.5 * grid.dt),
      momentum(grid),
      current_scale(4.0 * std::numbers::pi * grid.dp() * grid.dp() * grid.dx() / grid.dt) {}

TrajectoryReader::TrajectoryReader(const ForwardRun& run) : run_(run), ops_(run.grid), scratch_(run.grid) {
  if (!run.snapshots) throw ConfigError("forward run kept no distribution snapshots");
}

const Distribution& TrajectoryReader::at(int n) {
  const SnapshotStore& store = *run_.snapshots;
  if (const Distribution* p = store.peek(n)) return *p;
  if (auto it = cache_.find(n); it != cache_.end()) return it->second;
  cache_.clear();
  if (store.has(n)) return cache_.emplace(n, store.get(n)).first->second;
  const int s = store.stored_at_or_before(n);
  const int e = store.stored_after(n);
  if (store.mode() == SnapshotMode::interpolate) {
    const double theta = static_cast<double>(n - s) / (e - s);
    Distribution f = store.get(s);
    f.scale(1.0 - theta);
    f.axpy(theta, store.get(e));
    return cache_.emplace(n, std::move(f)).first->second;
  }
  Distribution f = store.get(s);
  Distribution a(run_.grid);
  Distribution b(run_.grid);
  for (int k = s; k < e - 1; ++k) {
    ops_.half_shift.apply(f, a, scratch_);
    ops_.momentum.apply(a, run_.forces[k], run_.grid.dt, b);
    ops_.half_shift.apply(b, f, scratch_);
    cache_.emplace(k + 1, f);
  }
  return cache_.at(n);
}

void TrajectoryReader::stages(int n, Distribution& f_star, Distribution& f_star_star) {
  ops_.half_shift.apply(at(n), f_star, scratch_);
  ops_.momentum.apply(f_star, run_.forces[n], run_.grid.dt, f_star_star);
}

}  // namespace vctl
