#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vctl/core/profiles.hpp"
#include "vctl/optimize/box.hpp"
#include "vctl/optimize/kkt.hpp"
#include "vctl/optimize/optimizer.hpp"
#include "vctl/sensitivity/reduced_problem.hpp"

using namespace vctl;

namespace {

ControlTrajectory random_trajectory(int coils, int times, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(lo, hi);
  ControlTrajectory u(coils, times);
  for (double& v : u.values()) v = d(rng);
  return u;
}

/// phi(u) = 1/2 sum_i a_i (u_i - c_i)^2 with a known box-constrained minimiser clamp(c).
class Quadratic : public ReducedObjective {
 public:
  Quadratic(ControlTrajectory centre, ControlTrajectory curvature)
      : centre_(std::move(centre)), curvature_(std::move(curvature)) {}

  Evaluation evaluate(const ControlTrajectory& u, bool with_gradient) override {
    Evaluation e;
    e.gradient = ControlTrajectory(u.coils(), u.times());
    for (std::size_t i = 0; i < u.values().size(); ++i) {
      const double r = u.values()[i] - centre_.values()[i];
      e.value.tracking += 0.5 * curvature_.values()[i] * r * r;
      e.gradient.values()[i] = curvature_.values()[i] * r;
    }
    e.has_gradient = with_gradient;
    return e;
  }

 private:
  ControlTrajectory centre_;
  ControlTrajectory curvature_;
};

}  // namespace

TEST(ProjectBox, FeasiblePointsAreUnchanged) {
  std::mt19937_64 rng(1);
  const ControlTrajectory u = random_trajectory(2, 7, -1.0, 1.0, rng);
  EXPECT_EQ(project_box(u), u);
}

TEST(ProjectBox, ClampsToTheBox) {
  EXPECT_EQ(project_box(ControlTrajectory(1, 4, 3.0)), ControlTrajectory(1, 4, 1.0));
  ControlTrajectory u(1, 3);
  u(0, 0) = -2.0;
  u(0, 1) = 0.5;
  u(0, 2) = 1.7;
  const ControlTrajectory p = project_box(u);
  EXPECT_EQ(p(0, 0), -1.0);
  EXPECT_EQ(p(0, 1), 0.5);
  EXPECT_EQ(p(0, 2), 1.0);
}

TEST(ProjectBox, IdempotentAndNonexpansive) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const ControlTrajectory a = random_trajectory(3, 9, -3.0, 3.0, rng);
    const ControlTrajectory b = random_trajectory(3, 9, -3.0, 3.0, rng);
    const ControlTrajectory pa = project_box(a);
    EXPECT_EQ(project_box(pa), pa);
    ControlTrajectory dp = pa;
    dp.axpy(-1.0, project_box(b));
    ControlTrajectory d = a;
    d.axpy(-1.0, b);
    EXPECT_LE(dp.norm(), d.norm() + 1e-15);
  }
}

TEST(Kkt, InteriorStationaryPointHasZeroResiduals) {
  ControlTrajectory u(2, 5, 0.3);
  const KKTReport r = kkt_residuals(u, ControlTrajectory(2, 5));
  EXPECT_EQ(r.stationarity, 0.0);
  EXPECT_EQ(r.complementarity, 0.0);
  EXPECT_EQ(r.feasibility, 0.0);
}

TEST(Kkt, UpperBoundPushedUpward) {
  const ControlTrajectory u(1, 6, 1.0);
  ControlTrajectory g(1, 6);
  for (int k = 0; k < 6; ++k) g(0, k) = -0.5 - k;
  const KKTReport r = kkt_residuals(u, g);
  EXPECT_EQ(r.stationarity, 0.0);
  EXPECT_EQ(r.complementarity, 0.0);
  for (int k = 0; k < 6; ++k) {
    EXPECT_EQ(r.lambda_plus(0, k), -g(0, k));
    EXPECT_EQ(r.lambda_minus(0, k), 0.0);
  }
}

TEST(Kkt, WrongSignOnActiveSetAndInfeasibility) {
  ControlTrajectory u(1, 3);
  u(0, 0) = -1.0;
  u(0, 1) = 1.0;
  u(0, 2) = 1.25;
  ControlTrajectory g(1, 3);
  g(0, 0) = -0.4;  // lower bound, objective decreases upwards: not stationary
  g(0, 1) = 0.3;   // upper bound, objective decreases downwards: not stationary
  g(0, 2) = 0.0;
  const KKTReport r = kkt_residuals(u, g);
  EXPECT_DOUBLE_EQ(r.stationarity, 0.4);
  EXPECT_DOUBLE_EQ(r.feasibility, 0.25);
  EXPECT_GE(r.lambda_plus(0, 1), 0.0);
  EXPECT_GE(r.lambda_minus(0, 0), 0.0);
}

TEST(Kkt, TieAtBoundWithZeroGradientCountsInactive) {
  const KKTReport r = kkt_residuals(ControlTrajectory(1, 2, -1.0), ControlTrajectory(1, 2));
  EXPECT_EQ(r.stationarity, 0.0);
  EXPECT_EQ(r.lambda_minus(0, 0), 0.0);
}

TEST(Kkt, MatchesSampledVariationalInequality) {
  // At a feasible u the VI <g, v - u> >= 0 holds for all feasible v iff the KKT residuals vanish.
  // Brute force: the most violating feasible v is v_i = -sign(g_i) (or u_i where g_i = 0), so
  // min_v <g, v - u> = sum_i min(g_i (-1 - u_i), g_i (1 - u_i)), and random v never go below it.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    ControlTrajectory u = random_trajectory(2, 6, -1.0, 1.0, rng);
    for (double& v : u.values())
      if (int p = pick(rng); p == 0) v = -1.0;
      else if (p == 1) v = 1.0;
    ControlTrajectory g = random_trajectory(2, 6, -1.0, 1.0, rng);
    if (trial % 2 == 0)
      for (std::size_t i = 0; i < g.values().size(); ++i) {
        const double ui = u.values()[i];
        double& gi = g.values()[i];
        if (ui == 1.0) gi = -std::abs(gi);
        else if (ui == -1.0) gi = std::abs(gi);
        else gi = 0.0;
      }
    const KKTReport r = kkt_residuals(u, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.values().size(); ++i) {
      const double gi = g.values()[i], ui = u.values()[i];
      worst += std::min(gi * (-1.0 - ui), gi * (1.0 - ui));
    }
    for (int s = 0; s < 200; ++s) {
      const ControlTrajectory v = random_trajectory(2, 6, -1.0, 1.0, rng);
      ControlTrajectory d = v;
      d.axpy(-1.0, u);
      EXPECT_GE(g.dot(d), worst - 1e-12);
    }
    if (r.stationarity == 0.0)
      EXPECT_GE(worst, -1e-14) << "trial " << trial;
    else
      EXPECT_LT(worst, 0.0) << "trial " << trial;
    EXPECT_EQ(r.complementarity, 0.0);
  }
}

TEST(Optimizer, ConfigViolations) {
  OptimizerConfig c;
  EXPECT_TRUE(c.violations().empty());
  c.c1 = 1.5;
  c.backtrack = 0.0;
  c.max_iters = -1;
  EXPECT_EQ(c.violations().size(), 3u);
}

TEST(Optimizer, StationaryInitialPointIsReturned) {
  Quadratic q(ControlTrajectory(1, 5, 0.2), ControlTrajectory(1, 5, 1.0));
  const ControlTrajectory init(1, 5, 0.2);
  const OptimizeResult r = minimize(q, init, OptimizerConfig{});
  EXPECT_EQ(r.u, init);
  EXPECT_EQ(r.history.size(), 1u);
  EXPECT_EQ(r.status, OptimizerStatus::stationary);
}

TEST(Optimizer, QuadraticWithActiveBoundsConverges) {
  std::mt19937_64 rng(4);
  const ControlTrajectory centre = random_trajectory(2, 8, -2.0, 2.0, rng);
  const ControlTrajectory curvature = random_trajectory(2, 8, 0.5, 4.0, rng);
  Quadratic q(centre, curvature);
  OptimizerConfig cfg;
  cfg.max_iters = 200;
  cfg.pg_tolerance = 1e-10;
  const OptimizeResult r = minimize(q, ControlTrajectory(2, 8), cfg);
  const ControlTrajectory expected = project_box(centre);
  for (std::size_t i = 0; i < expected.values().size(); ++i) EXPECT_NEAR(r.u.values()[i], expected.values()[i], 1e-8);
  for (std::size_t k = 1; k < r.history.size(); ++k) EXPECT_LE(r.history[k].objective, r.history[k - 1].objective);
  EXPECT_LT(r.kkt.stationarity, 1e-7);
  EXPECT_EQ(r.kkt.feasibility, 0.0);
}

TEST(Optimizer, InfeasibleStartIsProjected) {
  Quadratic q(ControlTrajectory(1, 3, 0.0), ControlTrajectory(1, 3, 1.0));
  const OptimizeResult r = minimize(q, ControlTrajectory(1, 3, 5.0), OptimizerConfig{});
  EXPECT_TRUE(r.u.feasible());
  EXPECT_EQ(r.history.front().feasibility, 0.0);
}

TEST(Optimizer, RegularizationOnlyProblemConvergesToZero) {
  const PhaseGrid g{3.0, 4.0, 12, 16, 0.1, 6};
  BlobProfile b;
  b.sigma_x = 0.5;
  b.radius_x = 1.0;
  b.radius_p = 1.0;
  b.amplitude = 0.1;
  CoilSpec coil;
  coil.radius = 1.2;
  const ControlModel model(g, {coil});
  const InitialData init = make_initial_data(sample_distribution(g, b), BackgroundMode::local);
  const TargetDensity target = target_from_run(run_forward(init, model, ControlTrajectory(1, g.nt + 1)));
  ObjectiveWeights w;
  w.beta = 1.0;
  ReducedProblem problem(init, model, target, w);
  ControlTrajectory start(1, g.nt + 1);
  for (int k = 0; k <= g.nt; ++k) start(0, k) = 0.8 * std::cos(0.9 * k);
  OptimizerConfig cfg;
  cfg.max_iters = 60;
  cfg.pg_tolerance = 1e-8;
  const OptimizeResult r = minimize(problem, start, cfg);
  EXPECT_LE(r.u.norm(), 1e-4);
  for (std::size_t k = 1; k < r.history.size(); ++k) EXPECT_LE(r.history[k].objective, r.history[k - 1].objective);
}
