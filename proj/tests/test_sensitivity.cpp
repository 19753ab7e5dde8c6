#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "vctl/core/moments.hpp"
#include "vctl/core/profiles.hpp"
#include "vctl/forward/objective.hpp"
#include "vctl/sensitivity/adjoint.hpp"
#include "vctl/sensitivity/gradient.hpp"
#include "vctl/sensitivity/reduced_problem.hpp"
#include "vctl/sensitivity/tangent.hpp"

using namespace vctl;

namespace {

PhaseGrid grid() { return PhaseGrid{4.0, 4.0, 20, 20, 0.1, 10}; }

Distribution plasma(const PhaseGrid& g) {
  BlobProfile b;
  b.center = {0.3, -0.1};
  b.drift = {0.2, 0.1};
  b.sigma_x = 0.5;
  b.sigma_p = 0.45;
  b.radius_x = 1.1;
  b.radius_p = 1.0;
  b.amplitude = 0.1;
  return sample_distribution(g, b);
}

ControlModel coils(const PhaseGrid& g) {
  CoilSpec ring;
  ring.center = {0.2, 0.0};
  ring.radius = 1.2;
  ring.amplitude = 1.0;
  CoilSpec bar;
  bar.shape = CoilShape::straight;
  bar.center = {-0.3, 0.3};
  bar.radius = 0.9;
  bar.amplitude = 0.8;
  bar.angle = 0.7;
  return ControlModel(g, {ring, bar});
}

ControlTrajectory smooth_control(const PhaseGrid& g, double a, double phase) {
  ControlTrajectory u(2, g.nt + 1);
  for (int k = 0; k <= g.nt; ++k) {
    const double t = g.time(k);
    u(0, k) = a * std::sin(3.0 * t + phase);
    u(1, k) = a * std::cos(2.0 * t - phase);
  }
  return u;
}

ControlTrajectory random_direction(const PhaseGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  ControlTrajectory d(2, g.nt + 1);
  for (int j = 0; j < 2; ++j) {
    const double a = c(rng), b = c(rng), w = 1.0 + 3.0 * std::abs(c(rng));
    for (int k = 0; k <= g.nt; ++k) d(j, k) = a * std::sin(w * g.time(k)) + b * std::cos(w * g.time(k));
  }
  return d;
}

/// A target that differs from the u = 0 run so that the tracking term is active.
TargetDensity shifted_target(const PhaseGrid& g, const InitialData& init, const ControlModel& model) {
  return target_from_run(run_forward(init, model, smooth_control(g, 0.6, 0.4)));
}

double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double max_abs(const ControlTrajectory& u) { return u.max_abs(); }

}  // namespace

TEST(Tangent, ZeroPerturbationGivesZero) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  const ForwardRun base =
      run_forward(make_initial_data(plasma(g), BackgroundMode::local), model, smooth_control(g, 0.3, 0.0));
  const TangentResult t = solve_tangent(base, model, ControlTrajectory(2, g.nt + 1));
  for (const SpatialScalar& r : t.drho) EXPECT_EQ(l2(r.v), 0.0);
  EXPECT_EQ(t.final_state.df.max_abs(), 0.0);
}

TEST(Tangent, IsLinearInPerturbation) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  const ForwardRun base =
      run_forward(make_initial_data(plasma(g), BackgroundMode::local), model, smooth_control(g, 0.3, 0.0));
  const ControlTrajectory d = smooth_control(g, 0.5, 1.1);
  ControlTrajectory d2 = d;
  d2.scale(2.0);
  const TangentResult a = solve_tangent(base, model, d);
  const TangentResult b = solve_tangent(base, model, d2);
  Distribution diff = b.final_state.df;
  diff.axpy(-2.0, a.final_state.df);
  EXPECT_LT(diff.max_abs(), 1e-13 * a.final_state.df.max_abs());
}

TEST(Tangent, MatchesNonlinearDifferenceQuotient) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  const InitialData init = make_initial_data(plasma(g), BackgroundMode::local);
  const ControlTrajectory u = smooth_control(g, 0.3, 0.0);
  const ControlTrajectory d = smooth_control(g, 0.5, 1.1);
  const ForwardRun base = run_forward(init, model, u);
  const TangentResult t = solve_tangent(base, model, d);
  const double eps = 1e-3;
  ControlTrajectory up = u;
  up.axpy(eps, d);
  const ForwardRun pert = run_forward(init, model, up);
  std::vector<double> fd, tan;
  for (int n = 0; n <= g.nt; ++n)
    for (std::size_t k = 0; k < pert.rho[n].v.size(); ++k) {
      fd.push_back((pert.rho[n].v[k] - base.rho[n].v[k]) / eps);
      tan.push_back(t.drho[n].v[k]);
    }
  std::vector<double> err(fd.size());
  for (std::size_t k = 0; k < fd.size(); ++k) err[k] = fd[k] - tan[k];
  EXPECT_LE(l2(err), 0.05 * l2(tan));
}

TEST(Adjoint, MatchingTargetGivesZero) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  const ForwardRun base =
      run_forward(make_initial_data(plasma(g), BackgroundMode::local), model, smooth_control(g, 0.3, 0.0));
  const AdjointResult a = solve_adjoint(base, target_from_run(base), ObjectiveWeights{});
  for (const FaceVector& s : a.control_sensitivity) {
    EXPECT_EQ(l2(s.c1), 0.0);
    EXPECT_EQ(l2(s.c2), 0.0);
  }
  EXPECT_EQ(a.initial.g.max_abs(), 0.0);
}

TEST(Adjoint, TrackingOffGivesZero) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  const InitialData init = make_initial_data(plasma(g), BackgroundMode::local);
  const ForwardRun base = run_forward(init, model, smooth_control(g, 0.3, 0.0));
  ObjectiveWeights w;
  w.tracking = false;
  const AdjointResult a = solve_adjoint(base, zero_target(g), w);
  for (const FaceVector& s : a.control_sensitivity) EXPECT_EQ(l2(s.c1) + l2(s.c2), 0.0);
}

TEST(Adjoint, EmptyPlasmaDecouplesFields) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  const ForwardRun base =
      run_forward(make_initial_data(Distribution(g), BackgroundMode::local), model, smooth_control(g, 0.3, 0.0));
  TargetDensity target = zero_target(g);
  for (SpatialScalar& r : target.rho) r(10, 10) = 1.0;
  double g_norm = 0.0;
  AdjointOptions opt;
  opt.observer = [&](int, const AdjointState& s) {
    EXPECT_EQ(l2(s.h.b), 0.0);
    EXPECT_EQ(l2(s.h.e.c1) + l2(s.h.e.c2), 0.0);
    g_norm = std::max(g_norm, s.g.max_abs());
  };
  const AdjointResult a = solve_adjoint(base, target, ObjectiveWeights{}, opt);
  EXPECT_GT(g_norm, 0.0);
  for (const FaceVector& s : a.control_sensitivity) EXPECT_EQ(l2(s.c1) + l2(s.c2), 0.0);
}

TEST(Adjoint, DualityWithTangent) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  const InitialData init = make_initial_data(plasma(g), BackgroundMode::local);
  const TargetDensity target = shifted_target(g, init, model);
  const ForwardRun base = run_forward(init, model, smooth_control(g, 0.3, 0.0));
  const AdjointResult adj = solve_adjoint(base, target, ObjectiveWeights{});
  const ControlTrajectory grad = tracking_gradient(adj, model, g.nt + 1);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    const ControlTrajectory d = random_direction(g, rng);
    const double tangent_side = tracking_derivative(base, target, solve_tangent(base, model, d));
    EXPECT_NEAR(grad.dot(d), tangent_side, 1e-2 * std::abs(tangent_side));
  }
}

TEST(Gradient, ZeroAdjointAndZeroControlGiveZero) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  AdjointResult adj;
  adj.control_sensitivity.assign(g.nt, FaceVector(g.nx));
  const ControlTrajectory grad = assemble_gradient(adj, ControlTrajectory(2, g.nt + 1), model, {}, g.dt);
  EXPECT_EQ(max_abs(grad), 0.0);
}

TEST(Gradient, ConstantControlGivesWeightedNormConstant) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  AdjointResult adj;
  adj.control_sensitivity.assign(g.nt, FaceVector(g.nx));
  ControlTrajectory u(2, g.nt + 1);
  for (int k = 0; k <= g.nt; ++k) u(0, k) = 1.0;
  ObjectiveWeights w;
  w.beta = 0.4;
  const ControlTrajectory grad = assemble_gradient(adj, u, model, w, g.dt);
  const std::vector<double> tw = trapezoid_weights(g.nt, g.dt);
  for (int k = 0; k <= g.nt; ++k) {
    EXPECT_NEAR(grad(0, k), w.beta * model.norm_constant(0) * tw[k], 1e-14);
    EXPECT_EQ(grad(1, k), 0.0);
  }
}

TEST(Gradient, AffineInControlAndLinearInAdjoint) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  const InitialData init = make_initial_data(plasma(g), BackgroundMode::local);
  const ForwardRun base = run_forward(init, model, smooth_control(g, 0.3, 0.0));
  AdjointResult adj = solve_adjoint(base, shifted_target(g, init, model), ObjectiveWeights{});
  const ObjectiveWeights w;
  const ControlTrajectory u = smooth_control(g, 0.3, 0.0);
  ControlTrajectory lhs = assemble_gradient(adj, u, model, w, g.dt);
  lhs.axpy(-1.0, assemble_gradient(adj, ControlTrajectory(2, g.nt + 1), model, w, g.dt));
  lhs.axpy(-1.0, regularization_gradient(u, model, w, g.dt));
  EXPECT_LT(max_abs(lhs), 1e-15 + 1e-12 * max_abs(regularization_gradient(u, model, w, g.dt)));
  const ControlTrajectory once = tracking_gradient(adj, model, g.nt + 1);
  for (FaceVector& s : adj.control_sensitivity) s.scale(3.0);
  ControlTrajectory thrice = tracking_gradient(adj, model, g.nt + 1);
  thrice.axpy(-3.0, once);
  EXPECT_LT(max_abs(thrice), 1e-13 * max_abs(once));
}

TEST(Gradient, AgreesWithFiniteDifferencesInRandomDirections) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  const InitialData init = make_initial_data(plasma(g), BackgroundMode::local);
  ReducedProblem problem(init, model, shifted_target(g, init, model), ObjectiveWeights{});
  const ControlTrajectory u = smooth_control(g, 0.3, 0.0);
  const Evaluation e = problem.evaluate(u, true);
  ASSERT_TRUE(e.has_gradient);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const ControlTrajectory d = random_direction(g, rng);
    const double fd = fd_gradient(problem, u, d, 1e-3);
    EXPECT_NEAR(e.gradient.dot(d), fd, 0.02 * std::abs(fd)) << "direction " << trial;
  }
}

TEST(FiniteDifference, ZeroDirectionGivesZero) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  ReducedProblem problem(make_initial_data(plasma(g), BackgroundMode::local), model, zero_target(g), {});
  EXPECT_EQ(fd_gradient(problem, smooth_control(g, 0.3, 0.0), ControlTrajectory(2, g.nt + 1), 1e-3), 0.0);
}

TEST(FiniteDifference, ExactForQuadraticObjective) {
  const PhaseGrid g = grid();
  const ControlModel model = coils(g);
  ObjectiveWeights w;
  w.tracking = false;
  w.beta = 0.5;
  w.beta1 = 0.1;
  w.beta2 = 1e-3;
  ReducedProblem problem(make_initial_data(Distribution(g), BackgroundMode::local), model, zero_target(g), w);
  const ControlTrajectory u = smooth_control(g, 0.4, 0.2);
  const Evaluation e = problem.evaluate(u, true);
  std::mt19937_64 rng(9);
  const ControlTrajectory d = random_direction(g, rng);
  const double fd = fd_gradient(problem, u, d, 1e-2);
  EXPECT_NEAR(e.gradient.dot(d), fd, 1e-10 * std::abs(fd));
}

TEST(FiniteDifference, EpsilonSweepHasInteriorMinimum) {
  const PhaseGrid g{4.0, 4.0, 20, 20, 0.1, 6};
  const ControlModel model = coils(g);
  const InitialData init = make_initial_data(plasma(g), BackgroundMode::local);
  ReducedProblem problem(init, model, shifted_target(g, init, model), ObjectiveWeights{});
  const ControlTrajectory u = smooth_control(g, 0.3, 0.0);
  const double exact = problem.evaluate(u, true).gradient.dot(smooth_control(g, 1.0, 0.5));
  std::vector<double> errors;
  for (double eps : {3e-1, 1e-2, 1e-4, 1e-6, 1e-10, 1e-13})
    errors.push_back(std::abs(fd_gradient(problem, u, smooth_control(g, 1.0, 0.5), eps) - exact));
  const auto best = std::min_element(errors.begin(), errors.end());
  EXPECT_NE(best, errors.begin());
  EXPECT_NE(best, errors.end() - 1);
  EXPECT_GT(errors.front(), 10.0 * *best);
  EXPECT_GT(errors.back(), 10.0 * *best);
}
