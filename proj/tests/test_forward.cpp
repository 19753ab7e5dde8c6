#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "vctl/core/error.hpp"
#include "vctl/core/moments.hpp"
#include "vctl/core/parallel.hpp"
#include "vctl/core/profiles.hpp"
#include "vctl/forward/energy.hpp"
#include "vctl/forward/objective.hpp"
#include "vctl/forward/simulation.hpp"

using namespace vctl;

namespace {

PhaseGrid small_grid(int nt = 8) { return PhaseGrid{3.0, 4.0, 16, 20, 0.1, nt}; }

BlobProfile small_blob() {
  BlobProfile b;
  b.center = {0.2, 0.0};
  b.drift = {0.3, -0.1};
  b.sigma_x = 0.4;
  b.sigma_p = 0.4;
  b.radius_x = 1.0;
  b.radius_p = 1.0;
  b.amplitude = 0.1;
  return b;
}

ControlModel one_ring(const PhaseGrid& g, Vec2 center = {}, double radius = 1.0) {
  CoilSpec c;
  c.center = center;
  c.radius = radius;
  return ControlModel(g, {c});
}

ControlTrajectory ramp(const PhaseGrid& g, double amp) {
  ControlTrajectory u(1, g.nt + 1);
  for (int k = 0; k <= g.nt; ++k) u(0, k) = amp * std::sin(0.5 * k * g.dt);
  return u;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST(Forward, ZeroDataGivesZeroTrajectory) {
  const PhaseGrid g = small_grid();
  const InitialData init = make_initial_data(Distribution(g), BackgroundMode::local);
  const ForwardRun run = run_forward(init, one_ring(g), ControlTrajectory(1, g.nt + 1));
  EXPECT_EQ(run.final_f.max_abs(), 0.0);
  for (const DiagnosticRecord& d : run.diagnostics) {
    EXPECT_EQ(d.mass, 0.0);
    EXPECT_EQ(d.field_energy, 0.0);
    EXPECT_EQ(d.gauss_residual, 0.0);
  }
  for (const FieldState& s : run.fields.states) EXPECT_EQ(s.boundary_max_abs(), 0.0);
}

TEST(Forward, EmptyPlasmaReproducesExternalFieldSolve) {
  const PhaseGrid g = small_grid(12);
  const ControlModel model = one_ring(g);
  const ControlTrajectory u = ramp(g, 0.9);
  const ForwardRun run = run_forward(make_initial_data(Distribution(g), BackgroundMode::local), model, u);
  const FieldHistory ext = external_field_solve(g, model, u);
  EXPECT_EQ(run.final_f.max_abs(), 0.0);
  for (int n = 0; n <= g.nt; ++n) {
    EXPECT_LT(max_diff(run.fields.states[n].b, ext.states[n].b), 1e-14);
    EXPECT_LT(max_diff(run.fields.states[n].e.c1, ext.states[n].e.c1), 1e-14);
    EXPECT_LT(max_diff(run.fields.states[n].e.c2, ext.states[n].e.c2), 1e-14);
  }
}

TEST(Forward, DiagnosticsHaveMonotoneTimeAndFiniteValues) {
  const PhaseGrid g = small_grid();
  const ForwardRun run =
      run_forward(make_initial_data(sample_distribution(g, small_blob()), BackgroundMode::local), one_ring(g),
                  ramp(g, 0.5));
  ASSERT_EQ(run.diagnostics.size(), static_cast<std::size_t>(g.nt + 1));
  for (int n = 0; n <= g.nt; ++n) {
    const DiagnosticRecord& d = run.diagnostics[n];
    EXPECT_EQ(d.step, n);
    EXPECT_DOUBLE_EQ(d.time, g.time(n));
    for (double v : {d.mass, d.l1, d.l2, d.linf, d.field_energy, d.kinetic_energy, d.gauss_residual})
      EXPECT_TRUE(std::isfinite(v));
  }
}

TEST(Forward, MassIsConservedForCompactPlasma) {
  const PhaseGrid g = small_grid(10);
  const ForwardRun run =
      run_forward(make_initial_data(sample_distribution(g, small_blob()), BackgroundMode::local), one_ring(g),
                  ramp(g, 0.5));
  const double m0 = run.diagnostics.front().mass;
  EXPECT_NEAR(run.diagnostics.back().mass, m0, 1e-3 * m0);
}

TEST(Forward, ResultIsIndependentOfThreadCount) {
  const PhaseGrid g = small_grid(6);
  const InitialData init = make_initial_data(sample_distribution(g, small_blob()), BackgroundMode::local);
  set_thread_count(1);
  const ForwardRun a = run_forward(init, one_ring(g), ramp(g, 0.7));
  set_thread_count(3);
  const ForwardRun b = run_forward(init, one_ring(g), ramp(g, 0.7));
  set_thread_count(1);
  for (std::size_t k = 0; k < a.final_f.size(); ++k) ASSERT_EQ(a.final_f.values()[k], b.final_f.values()[k]);
  for (std::size_t n = 0; n < a.diagnostics.size(); ++n) {
    EXPECT_EQ(a.diagnostics[n].total_energy, b.diagnostics[n].total_energy);
    EXPECT_EQ(a.diagnostics[n].gauss_residual, b.diagnostics[n].gauss_residual);
  }
}

TEST(Forward, ShapeMismatchIsRejected) {
  const PhaseGrid g = small_grid();
  const InitialData init = make_initial_data(Distribution(g), BackgroundMode::local);
  EXPECT_THROW(run_forward(init, one_ring(g), ControlTrajectory(1, g.nt)), ConfigError);
  EXPECT_THROW(run_forward(init, one_ring(g), ControlTrajectory(2, g.nt + 1)), ConfigError);
}

TEST(Forward, CflViolationIsRejected) {
  PhaseGrid g = small_grid();
  g.dt = 0.3;
  const InitialData init = make_initial_data(Distribution(g), BackgroundMode::local);
  EXPECT_THROW(run_forward(init, one_ring(g), ControlTrajectory(1, g.nt + 1)), ConfigError);
}

TEST(Forward, MomentumEscapeAborts) {
  const PhaseGrid g{3.0, 1.2, 16, 12, 0.1, 30};
  const ControlModel model = one_ring(g, {}, 2.0);
  const ControlTrajectory u(1, g.nt + 1, 1.0);
  BlobProfile b = small_blob();
  b.drift = {};
  b.radius_p = 0.6;
  b.sigma_p = 0.3;
  ForwardOptions opt;
  EXPECT_THROW(
      {
        try {
          CoilSpec strong;
          strong.amplitude = 60.0;
          strong.radius = 2.0;
          run_forward(make_initial_data(sample_distribution(g, b), BackgroundMode::local), ControlModel(g, {strong}),
                      u, opt);
        } catch (const NumericalError& e) {
          EXPECT_GT(e.step(), 0);
          throw;
        }
      },
      NumericalError);
}

TEST(Forward, ClippingKeepsMassAndRemovesNegatives) {
  const PhaseGrid g = small_grid(6);
  ForwardOptions opt;
  opt.clip_negative = true;
  const ForwardRun run = run_forward(make_initial_data(sample_distribution(g, small_blob()), BackgroundMode::local),
                                     one_ring(g), ramp(g, 0.5), opt);
  EXPECT_GE(run.final_f.min_value(), 0.0);
  const double m0 = run.diagnostics.front().mass;
  EXPECT_NEAR(run.diagnostics.back().mass, m0, 1e-3 * m0);
  EXPECT_NEAR(run.diagnostics.back().l1, run.diagnostics.back().mass, 1e-14);
}

TEST(Forward, SnapshotModesAgreeOnStoredSteps) {
  const PhaseGrid g = small_grid(6);
  const InitialData init = make_initial_data(sample_distribution(g, small_blob()), BackgroundMode::local);
  ForwardOptions every;
  const ForwardRun full = run_forward(init, one_ring(g), ramp(g, 0.5), every);
  ForwardOptions strided;
  strided.snapshot_stride = 3;
  strided.snapshot_mode = SnapshotMode::recompute;
  const ForwardRun sparse = run_forward(init, one_ring(g), ramp(g, 0.5), strided);
  EXPECT_TRUE(sparse.snapshots->has(3));
  EXPECT_FALSE(sparse.snapshots->has(2));
  TrajectoryReader rf(full), rs(sparse);
  for (int n = 0; n <= g.nt; ++n) {
    const Distribution a = rf.at(n);
    const Distribution& b = rs.at(n);
    for (std::size_t k = 0; k < a.size(); ++k) ASSERT_NEAR(a.values()[k], b.values()[k], 1e-13) << "step " << n;
  }
}

TEST(Forward, SnapshotsOnDiskMatchMemory) {
  const PhaseGrid g = small_grid(4);
  const InitialData init = make_initial_data(sample_distribution(g, small_blob()), BackgroundMode::local);
  const auto dir = std::filesystem::temp_directory_path() / "vctl_test_snapshots";
  std::filesystem::remove_all(dir);
  ForwardOptions disk;
  disk.snapshot_directory = dir;
  const ForwardRun a = run_forward(init, one_ring(g), ramp(g, 0.5), disk);
  const ForwardRun b = run_forward(init, one_ring(g), ramp(g, 0.5));
  for (int n = 0; n <= g.nt; ++n) {
    const Distribution fa = a.snapshots->get(n);
    const Distribution fb = b.snapshots->get(n);
    for (std::size_t k = 0; k < fa.size(); ++k) ASSERT_EQ(fa.values()[k], fb.values()[k]);
  }
  std::filesystem::remove_all(dir);
}

TEST(Forward, DistantCoilOutsideLightConeLeavesPlasmaUnchanged) {
  // Plasma within |x| <= 1.2 + t, coil field within |x - c| <= 0.5 + t; they cannot meet before t ~ 1.4 > T.
  const PhaseGrid g{6.0, 4.0, 48, 20, 0.17, 6};
  BlobProfile b = small_blob();
  b.center = {};
  CoilSpec far;
  far.center = {4.5, 0.0};
  far.radius = 0.5;
  const ControlModel model(g, {far});
  const InitialData init = make_initial_data(sample_distribution(g, b), BackgroundMode::local);
  // The coil field reaches the outer layer near the end; that is irrelevant here.
  ForwardOptions opt;
  opt.abort_on_escape = false;
  const ForwardRun off = run_forward(init, model, ControlTrajectory(1, g.nt + 1), opt);
  const ForwardRun on = run_forward(init, model, ControlTrajectory(1, g.nt + 1, 1.0), opt);
  // Exact for the first steps; afterwards only the cubic interpolation tails (about 1e-10 of the
  // peak in rho, 2e-9 in f) reach the coil field.
  for (int n = 0; n <= 2; ++n) EXPECT_EQ(max_diff(off.rho[n].v, on.rho[n].v), 0.0) << "step " << n;
  double peak = 0.0;
  for (double v : off.rho[0].v) peak = std::max(peak, std::abs(v));
  for (int n = 3; n <= g.nt; ++n) EXPECT_LT(max_diff(off.rho[n].v, on.rho[n].v), 1e-9 * peak) << "step " << n;
  EXPECT_LT(max_diff({off.final_f.values().begin(), off.final_f.values().end()},
                     {on.final_f.values().begin(), on.final_f.values().end()}),
            1e-8 * off.final_f.max_abs());
}

TEST(EnergyIdentity, ZeroPlasmaHasZeroResidual) {
  const PhaseGrid g = small_grid(10);
  const ControlModel model = one_ring(g);
  const ControlTrajectory u = ramp(g, 0.8);
  const ForwardRun run = run_forward(make_initial_data(Distribution(g), BackgroundMode::local), model, u);
  const EnergyIdentityReport r = energy_identity_residual(run, external_field_solve(g, model, u));
  EXPECT_EQ(r.max_abs_work, 0.0);
  EXPECT_LT(r.max_abs_residual, 1e-14);
}

TEST(EnergyIdentity, ZeroControlResidualIsEnergyRate) {
  const PhaseGrid g = small_grid(10);
  const ControlModel model = one_ring(g);
  const ControlTrajectory u(1, g.nt + 1);
  const ForwardRun run =
      run_forward(make_initial_data(sample_distribution(g, small_blob()), BackgroundMode::local), model, u);
  const EnergyIdentityReport r = energy_identity_residual(run, external_field_solve(g, model, u));
  EXPECT_EQ(r.max_abs_work, 0.0);
  const double e0 = run.diagnostics.front().total_energy;
  for (const EnergyIdentitySample& s : r.samples) {
    EXPECT_EQ(s.external_work, 0.0);
    EXPECT_LT(std::abs(s.residual), 1e-2 * e0);
  }
  EXPECT_LT(total_energy_drift(run), 1e-2);
}

TEST(Objective, TrapezoidWeightsSumToFinalTime) {
  const std::vector<double> w = trapezoid_weights(8, 0.25);
  ASSERT_EQ(w.size(), 9u);
  EXPECT_DOUBLE_EQ(w.front(), 0.125);
  EXPECT_DOUBLE_EQ(w[4], 0.25);
  double s = 0.0;
  for (double v : w) s += v;
  EXPECT_DOUBLE_EQ(s, 2.0);
}

TEST(Objective, MatchingDensityAndZeroControlGivesZero) {
  const PhaseGrid g = small_grid(6);
  const ControlModel model = one_ring(g);
  const ControlTrajectory u(1, g.nt + 1);
  const ForwardRun run =
      run_forward(make_initial_data(sample_distribution(g, small_blob()), BackgroundMode::local), model, u);
  const ObjectiveValue v = objective_eval(run, u, model, target_from_run(run), ObjectiveWeights{});
  EXPECT_EQ(v.total(), 0.0);
}

TEST(Objective, ConstantControlOnEmptyPlasma) {
  const PhaseGrid g = small_grid(10);
  const ControlModel model = one_ring(g);
  const ControlTrajectory u(1, g.nt + 1, 1.0);
  const ForwardRun run = run_forward(make_initial_data(Distribution(g), BackgroundMode::local), model, u);
  ObjectiveWeights w;
  w.beta = 0.3;
  const ObjectiveValue v = objective_eval(run, u, model, zero_target(g), w);
  EXPECT_EQ(v.tracking, 0.0);
  EXPECT_NEAR(v.regularization, 0.5 * w.beta * model.norm_constant(0) * g.final_time(), 1e-14);
}

TEST(Objective, TrackingTermOfUnitOffset) {
  const PhaseGrid g{2.0, 1.0, 8, 4, 0.5, 2};
  std::vector<SpatialScalar> rho(3, SpatialScalar(8, 1.0));
  // 1/2 * T * |box| * 1^2 = 1/2 * 1 * 16
  EXPECT_NEAR(tracking_term(rho, zero_target(g), g), 8.0, 1e-12);
}

TEST(Objective, RegularizationGradientMatchesDifferences) {
  const PhaseGrid g = small_grid(10);
  const ControlModel model(g, {CoilSpec{}, CoilSpec{CoilShape::straight, {0.2, 0.1}, 0.8, 1.0, 0.3}});
  ObjectiveWeights w;
  w.beta = 0.7;
  w.beta1 = 0.01;
  w.beta2 = 1e-4;
  ControlTrajectory u(2, g.nt + 1), d(2, g.nt + 1);
  for (int k = 0; k <= g.nt; ++k) {
    u(0, k) = std::cos(0.7 * k);
    u(1, k) = 0.1 * k - 0.4;
    d(0, k) = std::sin(1.3 * k);
    d(1, k) = (k % 3) - 1.0;
  }
  const ControlTrajectory grad = regularization_gradient(u, model, w, g.dt);
  const double h = 1e-5;
  ControlTrajectory up = u, dn = u;
  up.axpy(h, d);
  dn.axpy(-h, d);
  const double fd = (regularization_term(up, model, w, g.dt) - regularization_term(dn, model, w, g.dt)) / (2 * h);
  EXPECT_NEAR(grad.dot(d), fd, 1e-8 * std::abs(fd));
}
