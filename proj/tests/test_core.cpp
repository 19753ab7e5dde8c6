#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "vctl/core/control.hpp"
#include "vctl/core/distribution.hpp"
#include "vctl/core/error.hpp"
#include "vctl/core/grid.hpp"
#include "vctl/core/grid_io.hpp"
#include "vctl/core/kinematics.hpp"
#include "vctl/core/moments.hpp"
#include "vctl/core/parallel.hpp"
#include "vctl/core/profiles.hpp"

using namespace vctl;

namespace {

constexpr double kPi = std::numbers::pi;

PhaseGrid grid(double X, double P, int nx, int np) { return PhaseGrid{X, P, nx, np, 0.1, 1}; }

}  // namespace

TEST(Kinematics, RelativisticVelocityExamples) {
  const Vec2 a = relativistic_velocity({0.0, 0.0});
  EXPECT_EQ(a.x1, 0.0);
  EXPECT_EQ(a.x2, 0.0);
  const Vec2 b = relativistic_velocity({1.0, 0.0});
  EXPECT_NEAR(b.x1, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(b.x2, 0.0);
  const Vec2 c = relativistic_velocity({3.0, 4.0});
  EXPECT_NEAR(c.x1, 3.0 / std::sqrt(26.0), 1e-15);
  EXPECT_NEAR(c.x2, 4.0 / std::sqrt(26.0), 1e-15);
}

TEST(Kinematics, VelocityIsSubluminal) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 p{u(rng), u(rng)};
    EXPECT_LT(norm(relativistic_velocity(p)), 1.0);
  }
}

TEST(Kinematics, PerpExamples) {
  EXPECT_EQ(perp({1.0, 0.0}), (Vec2{0.0, 1.0}));
  EXPECT_EQ(perp({0.0, 1.0}), (Vec2{-1.0, 0.0}));
  EXPECT_EQ(perp({2.0, -3.0}), (Vec2{3.0, 2.0}));
}

TEST(Kinematics, PerpIsOrthogonalRotation) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int k = 0; k < 100; ++k) {
    const Vec2 a{n(rng), n(rng)};
    EXPECT_DOUBLE_EQ(dot(a, perp(a)), 0.0);
    EXPECT_DOUBLE_EQ(norm(perp(a)), norm(a));
    EXPECT_EQ(perp(perp(a)), -a);
  }
}

TEST(Kinematics, MagneticForceDoesNoWork) {
  const Vec2 v = relativistic_velocity({0.7, -1.3});
  const Vec2 k = lorentz_force({0.0, 0.0}, 2.5, v);
  EXPECT_NEAR(dot(k, v), 0.0, 1e-15);
}

TEST(Grid, CoordinatesAndIndexing) {
  const PhaseGrid g = grid(2.0, 1.0, 4, 8);
  EXPECT_DOUBLE_EQ(g.dx(), 1.0);
  EXPECT_DOUBLE_EQ(g.dp(), 0.25);
  EXPECT_DOUBLE_EQ(g.x_center(0), -1.5);
  EXPECT_DOUBLE_EQ(g.p_center(7), 0.875);
  EXPECT_DOUBLE_EQ(g.x_line(4), 2.0);
  EXPECT_EQ(g.index(0, 0, 0, 1), 1u);
  EXPECT_EQ(g.index(0, 1, 0, 0), 64u);
  EXPECT_EQ(g.index(1, 0, 0, 0), 256u);
  EXPECT_EQ(g.size(), 16u * 64u);
}

TEST(Grid, ViolationsAreAggregated) {
  PhaseGrid g{-1.0, 0.0, 1, 1, -0.1, 0};
  EXPECT_GE(g.violations().size(), 4u);
  try {
    g.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.violations(), g.violations());
    EXPECT_EQ(e.exit_code(), 2);
  }
}

TEST(Grid, CflLimit) {
  const PhaseGrid g = grid(1.0, 1.0, 10, 4);
  EXPECT_DOUBLE_EQ(maxwell_cfl_limit(g), 0.2 / std::sqrt(2.0));
}

TEST(Moments, ZeroDistributionHasZeroMoments) {
  const Distribution f(grid(1.0, 1.0, 4, 8));
  for (double v : charge_density(f).v) EXPECT_EQ(v, 0.0);
  const SpatialVector j = current_density(f);
  for (double v : j.c1.v) EXPECT_EQ(v, 0.0);
  for (double v : j.c2.v) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(lq_norm(f, Norm::l1), 0.0);
  EXPECT_EQ(lq_norm(f, Norm::l2), 0.0);
  EXPECT_EQ(lq_norm(f, Norm::linf), 0.0);
  const SupportRadii r = support_radii(f);
  EXPECT_EQ(r.x, 0.0);
  EXPECT_EQ(r.p, 0.0);
}

TEST(Moments, GaussianUnitMassGivesFourPi) {
  const double s = 0.5;
  const PhaseGrid g = grid(1.0, 4.0, 4, 64);
  const Distribution f = sample_distribution(
      g, [&](const Vec2&, const Vec2& p) { return std::exp(-dot(p, p) / (2 * s * s)) / (2 * kPi * s * s); });
  for (double v : charge_density(f).v) EXPECT_NEAR(v / (4 * kPi), 1.0, 1e-6);
}

TEST(Moments, PolynomialBumpMatchesClosedForm) {
  // integral over |p| < r of (1 - |p|^2 / r^2)^2 = pi r^2 / 3, times the spatial factor m(x) = 1 + x1.
  const double r = 1.5;
  const PhaseGrid g = grid(1.0, 2.0, 4, 128);
  const Distribution f = sample_distribution(g, [&](const Vec2& x, const Vec2& p) {
    const double s = dot(p, p) / (r * r);
    return s < 1.0 ? (1.0 + x.x1) * (1.0 - s) * (1.0 - s) : 0.0;
  });
  const SpatialScalar rho = charge_density(f);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.nx; ++j)
      EXPECT_NEAR(rho(i, j), 4 * kPi * (1.0 + g.x_center(i)) * kPi * r * r / 3.0, 2e-4 * 4 * kPi);
}

TEST(Moments, EvenDistributionCarriesNoCurrent) {
  const PhaseGrid g = grid(1.0, 3.0, 4, 32);
  const Distribution f = sample_distribution(g, [](const Vec2& x, const Vec2& p) {
    return (1.0 + x.x2 * x.x2) * std::exp(-dot(p, p)) * (1.0 + p.x1 * p.x1 * p.x2 * p.x2);
  });
  const SpatialScalar rho = charge_density(f);
  const SpatialVector j = current_density(f);
  for (std::size_t c = 0; c < rho.v.size(); ++c) {
    EXPECT_NEAR(j.c1.v[c], 0.0, 1e-13 * rho.v[c]);
    EXPECT_NEAR(j.c2.v[c], 0.0, 1e-13 * rho.v[c]);
  }
}

TEST(Moments, ConcentratedBeamMovesAtItsVelocity) {
  const Vec2 ps{1.0, 0.0};
  const double s = 0.04;
  const PhaseGrid g = grid(1.0, 2.0, 4, 200);
  const Distribution f = sample_distribution(
      g, [&](const Vec2&, const Vec2& p) { return std::exp(-dot(p - ps, p - ps) / (2 * s * s)); });
  const SpatialScalar rho = charge_density(f);
  const SpatialVector j = current_density(f);
  const Vec2 v = relativistic_velocity(ps);
  for (std::size_t c = 0; c < rho.v.size(); ++c) {
    EXPECT_NEAR(j.c1.v[c] / rho.v[c], v.x1, 2e-3);
    EXPECT_NEAR(j.c2.v[c] / rho.v[c], 0.0, 1e-12);
  }
}

TEST(Moments, ConstantOnCellsGivesL1) {
  const PhaseGrid g = grid(1.0, 1.0, 4, 8);
  Distribution f(g);
  const double c = 0.75;
  int k = 0;
  for (int j1 = 2; j1 < 5; ++j1)
    for (int j2 = 1; j2 < 3; ++j2, ++k) f(1, 2, j1, j2) = c;
  const double vol = std::pow(g.dx() * g.dp(), 2);
  EXPECT_NEAR(lq_norm(f, Norm::l1), c * k * vol, 1e-15);
  EXPECT_NEAR(mass(f), c * k * vol, 1e-15);
  EXPECT_NEAR(lq_norm(f, Norm::l2), std::sqrt(c * c * k * vol), 1e-15);
  EXPECT_EQ(lq_norm(f, Norm::linf), c);
}

TEST(Moments, SupportRadiiOfBlob) {
  const PhaseGrid g = grid(2.0, 2.0, 32, 32);
  BlobProfile b;
  b.radius_x = 1.0;
  b.radius_p = 0.5;
  b.center = {0.3, 0.0};
  const Distribution f = sample_distribution(g, b);
  const SupportRadii r = support_radii(f);
  EXPECT_LE(r.x, b.support_x() + 1e-12);
  EXPECT_GE(r.x, b.support_x() - std::sqrt(2.0) * g.dx());
  EXPECT_LE(r.p, b.support_p() + 1e-12);
  EXPECT_GE(r.p, b.support_p() - std::sqrt(2.0) * g.dp());
}

TEST(Profiles, SmoothBumpIsCompactlySupported) {
  EXPECT_EQ(smooth_bump(0.0), 1.0);
  EXPECT_EQ(smooth_bump(1.0), 0.0);
  EXPECT_EQ(smooth_bump(-1.5), 0.0);
  EXPECT_GT(smooth_bump(0.99), 0.0);
  EXPECT_NEAR(smooth_bump(0.5), std::exp(1.0 - 1.0 / 0.75), 1e-15);
}

TEST(Distribution, Arithmetic) {
  const PhaseGrid g = grid(1.0, 1.0, 2, 2);
  Distribution a(g, 1.0), b(g, 2.0);
  a.axpy(0.5, b);
  EXPECT_EQ(a(1, 1, 1, 1), 2.0);
  a.scale(-1.0);
  EXPECT_EQ(a.min_value(), -2.0);
  EXPECT_EQ(a.max_abs(), 2.0);
}

TEST(Control, RingCoilNormMatchesRadialQuadrature) {
  // c = ||z||^2 for z = A bump(r/R) e_theta r/R, computed independently in polar coordinates.
  CoilSpec s;
  s.radius = 0.8;
  s.amplitude = 3.0;
  const int m = 20000;
  double c = 0.0;
  for (int k = 0; k < m; ++k) {
    const double r = (k + 0.5) * s.radius / m;
    const double z = s.amplitude * smooth_bump(r / s.radius) * r / s.radius;
    c += 2 * kPi * r * z * z * s.radius / m;
  }
  const ControlModel model(PhaseGrid{2.0, 1.0, 128, 2, 0.01, 1}, {s});
  EXPECT_NEAR(model.norm_constant(0) / c, 1.0, 1e-3);
  EXPECT_DOUBLE_EQ(model.support_radius(), 0.8);
}

TEST(Control, RingCoilIsDivergenceFreeLoop) {
  CoilSpec s;
  s.center = {0.2, -0.1};
  const Vec2 x{0.5, 0.3};
  const Vec2 z = s.evaluate(x);
  EXPECT_NEAR(dot(z, x - s.center), 0.0, 1e-15);
  EXPECT_EQ(norm(s.evaluate({2.0, 0.0})), 0.0);
}

TEST(Control, StraightCoilPointsAlongAngle) {
  CoilSpec s;
  s.shape = CoilShape::straight;
  s.angle = kPi / 2;
  const Vec2 z = s.evaluate({0.1, 0.2});
  EXPECT_NEAR(z.x1, 0.0, 1e-15);
  EXPECT_GT(z.x2, 0.0);
  EXPECT_EQ(coil_shape_from_string(to_string(CoilShape::straight)), CoilShape::straight);
  EXPECT_THROW(coil_shape_from_string("helix"), ConfigError);
}

TEST(Control, AssembleIsLinearAndProjectIsItsAdjoint) {
  const PhaseGrid g{2.0, 1.0, 16, 2, 0.05, 1};
  CoilSpec a, b;
  a.center = {0.5, 0.0};
  b.shape = CoilShape::straight;
  b.angle = 0.3;
  const ControlModel model(g, {a, b});
  const std::vector<double> w{0.3, -0.7};
  const FaceVector U = model.assemble(w);
  const auto p = model.project(U);
  const double lhs = inner(U, U, g.dx());
  EXPECT_NEAR(lhs, w[0] * p[0] + w[1] * p[1], 1e-12 * lhs);
}

TEST(Control, TrajectoryAlgebra) {
  ControlTrajectory u(2, 3);
  u(0, 0) = 0.5;
  u(0, 1) = 1.0;
  u(1, 2) = -1.0;
  EXPECT_TRUE(u.feasible());
  EXPECT_EQ(u.at_half_step(0), (std::vector<double>{0.75, 0.0}));
  EXPECT_EQ(u.at_half_step(1), (std::vector<double>{0.5, -0.5}));
  u(1, 1) = -1.5;
  EXPECT_FALSE(u.feasible());
  EXPECT_EQ(u.max_abs(), 1.5);
  ControlTrajectory v = u;
  v.axpy(-1.0, u);
  EXPECT_EQ(v.norm(), 0.0);
  EXPECT_DOUBLE_EQ(u.dot(u), u.norm() * u.norm());
}

TEST(GridIo, HeaderRoundTrip) {
  DumpHeader h;
  h.kind = DumpKind::face_x2;
  h.dims[0] = 4;
  h.dims[1] = 5;
  h.x_extent = 1.25;
  h.p_extent = 3.5;
  h.time_index = 17;
  h.time = 0.625;
  const auto bytes = encode_header(h);
  ASSERT_EQ(bytes.size(), kDumpHeaderBytes);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "VCTL");
  const DumpHeader back = decode_header(bytes);
  EXPECT_EQ(back.kind, h.kind);
  EXPECT_EQ(back.dims[1], 5u);
  EXPECT_EQ(back.time_index, 17u);
  EXPECT_EQ(back.time, 0.625);
  EXPECT_EQ(back.element_count(), 20u);
}

TEST(GridIo, DistributionRoundTripAndMismatch) {
  const PhaseGrid g = grid(1.0, 2.0, 4, 6);
  const Distribution f = sample_distribution(g, [](const Vec2& x, const Vec2& p) { return x.x1 - 2 * p.x2; });
  const auto path = std::filesystem::temp_directory_path() / "vctl_core_io_f.vctl";
  write_distribution(path, f, 3, 0.3);
  const Distribution back = read_distribution(path, g);
  EXPECT_TRUE(std::equal(f.values().begin(), f.values().end(), back.values().begin()));
  EXPECT_THROW(read_distribution(path, grid(1.0, 2.0, 4, 8)), Error);
  std::filesystem::remove(path);
  EXPECT_THROW(read_distribution(path, g), IoError);
}

TEST(Parallel, ResultIndependentOfThreadCount) {
  std::vector<double> ref;
  for (int threads : {1, 2, 5}) {
    set_thread_count(threads);
    std::vector<double> out(1001);
    parallel_for(0, out.size(), [&](std::size_t i) { out[i] = std::sin(0.1 * i) * i; });
    if (ref.empty()) ref = out;
    EXPECT_EQ(out, ref);
  }
  set_thread_count(1);
}

TEST(Parallel, MomentsAreBitIdenticalAcrossThreadCounts) {
  const PhaseGrid g = grid(2.0, 2.0, 12, 12);
  BlobProfile b;
  const Distribution f = sample_distribution(g, b);
  set_thread_count(1);
  const double a1 = lq_norm(f, Norm::l1);
  const double k1 = kinetic_energy(f);
  set_thread_count(4);
  EXPECT_EQ(lq_norm(f, Norm::l1), a1);
  EXPECT_EQ(kinetic_energy(f), k1);
  set_thread_count(1);
}
