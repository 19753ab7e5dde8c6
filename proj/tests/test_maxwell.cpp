#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vctl/core/control.hpp"
#include "vctl/core/moments.hpp"
#include "vctl/core/profiles.hpp"
#include "vctl/forward/simulation.hpp"
#include "vctl/maxwell/maxwell.hpp"
#include "vctl/maxwell/poisson.hpp"
#include "vctl/maxwell/wave_oracle.hpp"

using namespace vctl;

namespace {

FaceVector random_faces(int nx, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  FaceVector f(nx);
  for (int i = 1; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      f.c1[face1_index(nx, i, j)] = n(rng);
      f.c2[face2_index(nx, j, i)] = n(rng);
    }
  return f;
}

std::vector<double> random_nodes(int nx, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::vector<double> b(node_count(nx), 0.0);
  for (int i = 1; i < nx; ++i)
    for (int j = 1; j < nx; ++j) b[node_index(nx, i, j)] = n(rng);
  return b;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(Maxwell, ZeroStaysZero) {
  FieldState f(12);
  const FieldState out = maxwell_step(f, {FaceVector(12), FaceVector(12)}, 0.05, 0.2);
  EXPECT_EQ(max_abs(out.e.c1), 0.0);
  EXPECT_EQ(max_abs(out.e.c2), 0.0);
  EXPECT_EQ(max_abs(out.b), 0.0);
}

TEST(Maxwell, UniformInteriorMagneticFieldIsStatic) {
  const int nx = 24;
  FieldState f(nx);
  for (int i = 1; i < nx; ++i)
    for (int j = 1; j < nx; ++j) f.bz(i, j) = 1.5;
  FieldState g = f;
  maxwell_step_in_place(g, FaceVector(nx), 0.05, 0.2);
  // Away from the Dirichlet layer the discrete curl of a constant vanishes.
  for (int i = 3; i < nx - 2; ++i)
    for (int j = 3; j < nx - 2; ++j) {
      EXPECT_EQ(g.bz(i, j), 1.5);
      EXPECT_EQ(g.e1(i, j), 0.0);
    }
}

TEST(Maxwell, CurlOperatorsAreTransposes) {
  std::mt19937_64 rng(11);
  const int nx = 10;
  const double dx = 0.3;
  const std::vector<double> b = random_nodes(nx, rng);
  const FaceVector e = random_faces(nx, rng);
  const double lhs = inner(curl_b_to_faces(b, nx, dx), e, dx);
  const double rhs = inner_nodes(b, curl_e_to_nodes(e, dx), dx);
  EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(lhs));
}

TEST(Maxwell, DivergenceOfCurlVanishes) {
  std::mt19937_64 rng(5);
  const int nx = 16;
  const SpatialScalar d = divergence(curl_b_to_faces(random_nodes(nx, rng), nx, 0.25), 0.25);
  EXPECT_LT(max_abs(d.v), 1e-12);
}

TEST(Maxwell, DepositionTransposePair) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  const int nx = 12;
  SpatialVector c(nx);
  for (auto& v : c.c1.v) v = n(rng);
  for (auto& v : c.c2.v) v = n(rng);
  const FaceVector f = random_faces(nx, rng);
  const FaceVector dc = deposit_to_faces(c);
  const SpatialVector tf = faces_to_centers(f);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t k = 0; k < dc.c1.size(); ++k) lhs += dc.c1[k] * f.c1[k] + dc.c2[k] * f.c2[k];
  for (std::size_t k = 0; k < c.c1.v.size(); ++k) rhs += c.c1.v[k] * tf.c1.v[k] + c.c2.v[k] * tf.c2.v[k];
  EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(lhs));
}

TEST(Maxwell, PlanePulseTravelsAtUnitSpeed) {
  const int nx = 128;
  const PhaseGrid g{8.0, 1.0, nx, 4, 0.05, 100};
  const double dx = g.dx();
  const auto F = [](double s) { return std::exp(-s * s / 0.5); };
  const double x0 = -3.0;
  FieldState f(nx);
  // B = E2 = F(x1 - t) is a right-moving wave of the TE system.
  for (int i = 1; i < nx; ++i)
    for (int j = 1; j < nx; ++j) f.bz(i, j) = F(g.x_line(i) - x0);
  for (int i = 0; i < nx; ++i)
    for (int j = 1; j < nx; ++j) f.e2(i, j) = F(g.x_center(i) - x0);
  start_leapfrog(f, g.dt, dx);
  for (int s = 0; s < g.nt; ++s) maxwell_step_in_place(f, FaceVector(nx), g.dt, dx);
  const int row = nx / 2;
  double m = 0.0, c = 0.0;
  for (int i = 0; i < nx; ++i) {
    const double w = f.e2(i, row) * f.e2(i, row);
    m += w;
    c += w * g.x_center(i);
  }
  EXPECT_NEAR(c / m, x0 + g.nt * g.dt, dx);
}

TEST(Maxwell, LeapfrogEnergyConservedInVacuum) {
  std::mt19937_64 rng(9);
  const int nx = 20;
  const double dx = 0.2, dt = 0.1;
  FieldState f(nx);
  f.b = random_nodes(nx, rng);
  double e0 = 0.0;
  std::vector<double> lag = f.b;
  for (int s = 0; s < 50; ++s) {
    lag = f.b;
    maxwell_step_in_place(f, FaceVector(nx), dt, dx);
    const double e = leapfrog_field_energy(f.e, lag, f.b, dx);
    if (s == 0) e0 = e;
    EXPECT_NEAR(e, e0, 1e-12 * e0);
  }
}

TEST(ExternalField, ZeroControlGivesZeroFields) {
  const PhaseGrid g{3.0, 1.0, 16, 4, 0.1, 10};
  const ControlModel model(g, {CoilSpec{}});
  const FieldHistory h = external_field_solve(g, model, ControlTrajectory(1, g.nt + 1));
  for (const FieldState& s : h.states) {
    EXPECT_EQ(max_abs(s.e.c1), 0.0);
    EXPECT_EQ(max_abs(s.b), 0.0);
  }
}

TEST(ExternalField, Linearity) {
  const PhaseGrid g{3.0, 1.0, 16, 4, 0.1, 10};
  CoilSpec a, b;
  a.center = {0.5, 0.0};
  b.shape = CoilShape::straight;
  const ControlModel model(g, {a, b});
  ControlTrajectory u(2, g.nt + 1), v(2, g.nt + 1);
  for (int k = 0; k <= g.nt; ++k) {
    u(0, k) = std::sin(k * 0.3);
    v(1, k) = 0.5 - 0.05 * k;
    v(0, k) = 0.2;
  }
  ControlTrajectory w = u;
  w.axpy(1.0, v);
  const FieldHistory hu = external_field_solve(g, model, u);
  const FieldHistory hv = external_field_solve(g, model, v);
  const FieldHistory hw = external_field_solve(g, model, w);
  for (int n = 0; n <= g.nt; ++n)
    for (std::size_t k = 0; k < hw.states[n].b.size(); ++k)
      EXPECT_NEAR(hw.states[n].b[k], hu.states[n].b[k] + hv.states[n].b[k], 1e-13);
}

TEST(ExternalField, NormBoundedByControlIntegral) {
  const PhaseGrid g{4.0, 1.0, 32, 4, 0.1, 40};
  CoilSpec a;
  a.amplitude = 2.0;
  const ControlModel model(g, {a});
  const ControlTrajectory u(1, g.nt + 1, 1.0);
  const FieldHistory h = external_field_solve(g, model, u);
  const double dx = g.dx();
  const double unorm = std::sqrt(inner(model.profile(0), model.profile(0), dx));
  for (int n = 1; n <= g.nt; ++n) {
    const double energy = leapfrog_field_energy(h.states[n].e, h.b_lagging(n), h.states[n].b, dx);
    const double norm = std::sqrt(2.0 * std::max(energy, 0.0));
    EXPECT_LE(norm, 1.05 * unorm * g.time(n));
  }
}

TEST(WaveOracle, ZeroDataGivesZero) {
  EXPECT_EQ(wave_oracle({}, {}, {}, 0.7, {0.1, 0.2}), 0.0);
}

TEST(WaveOracle, UnitSourceGivesHalfTSquared) {
  const SpaceTimeFunction one = [](double, const Vec2&) { return 1.0; };
  for (double t : {0.3, 1.0, 2.5}) EXPECT_NEAR(wave_oracle(one, {}, {}, t, {0.4, -0.2}), 0.5 * t * t, 1e-6 * t * t);
}

TEST(WaveOracle, InitialVelocityOfConstantGivesLinearGrowth) {
  const SpaceFunction h = [](const Vec2&) { return 2.0; };
  EXPECT_NEAR(wave_oracle({}, {}, h, 0.8, {0.0, 0.0}), 1.6, 1e-6);
}

TEST(WaveOracle, AgreesWithQuadraticSolution) {
  // u = t^2 |x|^2 / 4 + t^4 / 12 solves u_tt - Lap u = |x|^2 / 2 - t^2 + t^2 = |x|^2 / 2 with zero data.
  const SpaceTimeFunction src = [](double, const Vec2& x) { return 0.5 * dot(x, x); };
  const Vec2 x{0.3, -0.4};
  const double t = 0.9;
  const double exact = t * t * dot(x, x) / 4.0 + std::pow(t, 4) / 12.0;
  EXPECT_NEAR(wave_oracle(src, {}, {}, t, x), exact, 1e-5);
}

TEST(GaussResidual, CompatibleInitialData) {
  const PhaseGrid g{3.0, 2.0, 16, 16, 0.05, 1};
  BlobProfile b;
  b.drift = {0.3, 0.0};
  const Distribution f0 = sample_distribution(g, b);
  const InitialData local = make_initial_data(f0, BackgroundMode::local);
  EXPECT_EQ(local.compatibility_residual, 0.0);
  const InitialData uniform = make_initial_data(f0, BackgroundMode::uniform);
  EXPECT_LT(uniform.compatibility_residual, 1e-8 * l2_norm(charge_density(f0), g.dx()));
}

TEST(GaussResidual, VacuumRunPreservesDivergenceFreeField) {
  std::mt19937_64 rng(4);
  const int nx = 24;
  const double dx = 0.25, dt = 0.1;
  FieldState f(nx);
  f.e = curl_b_to_faces(random_nodes(nx, rng), nx, dx);
  const SpatialScalar zero(nx);
  for (int s = 0; s < 100; ++s) {
    maxwell_step_in_place(f, FaceVector(nx), dt, dx);
    EXPECT_LE(divergence_residual(f, zero, zero, zero, dx), 1e-10);
  }
}

TEST(Poisson, NeumannSolveSatisfiesEquation) {
  const int nx = 24;
  const double dx = 0.2;
  SpatialScalar rhs(nx);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j) rhs(i, j) = std::exp(-0.1 * ((i - 10) * (i - 10) + (j - 12) * (j - 12)));
  const PoissonResult r = solve_poisson_neumann(rhs, dx);
  const SpatialScalar d = divergence(negative_gradient(r.phi, dx), dx);
  for (std::size_t k = 0; k < d.v.size(); ++k) EXPECT_NEAR(d.v[k], rhs.v[k] - r.removed_mean, 1e-7);
}
