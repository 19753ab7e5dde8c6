#include "vctl/forward/objective.hpp"

#include "vctl/core/error.hpp"

namespace vctl {
namespace {

void check_target(const TargetDensity& target, const PhaseGrid& grid, std::size_t levels) {
  if (target.rho.size() != static_cast<std::size_t>(grid.nt + 1) || levels != target.rho.size())
    throw ConfigError("target density needs one field per time level (" + std::to_string(grid.nt + 1) + ")");
  for (const auto& r : target.rho)
    if (r.nx != grid.nx) throw ConfigError("target density resolution does not match the grid");
}

void check_control(const ControlTrajectory& u, const ControlModel& model) {
  if (u.coils() != model.coils()) throw ConfigError("control trajectory and coil model disagree on the coil count");
}

}  // namespace

std::vector<double> trapezoid_weights(int nt, double dt) {
  std::vector<double> w(nt + 1, dt);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double tracking_term(const std::vector<SpatialScalar>& rho, const TargetDensity& target, const PhaseGrid& grid) {
  check_target(target, grid, rho.size());
  const auto w = trapezoid_weights(grid.nt, grid.dt);
  const double area = grid.dx() * grid.dx();
  double total = 0.0;
  for (int n = 0; n <= grid.nt; ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < rho[n].v.size(); ++k) {
      const double d = rho[n].v[k] - target.rho[n].v[k];
      s += d * d;
    }
    total += w[n] * area * s;
  }
  return 0.5 * total;
}

double regularization_term(const ControlTrajectory& u, const ControlModel& model, const ObjectiveWeights& w,
                           double dt) {
  check_control(u, model);
  const int nt = u.times() - 1;
  const auto tw = trapezoid_weights(nt, dt);
  double total = 0.0;
  for (int j = 0; j < u.coils(); ++j) {
    double l2 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    for (int k = 0; k <= nt; ++k) l2 += tw[k] * u(j, k) * u(j, k);
    for (int k = 0; k < nt; ++k) {
      const double q = (u(j, k + 1) - u(j, k)) / dt;
      d1 += dt * q * q;
    }
    for (int k = 1; k < nt; ++k) {
      const double q = (u(j, k + 1) - 2.0 * u(j, k) + u(j, k - 1)) / (dt * dt);
      d2 += dt * q * q;
    }
    total += model.norm_constant(j) * (l2 + w.beta1 * d1 + w.beta2 * d2);
  }
  return 0.5 * w.beta * total;
}

ControlTrajectory regularization_gradient(const ControlTrajectory& u, const ControlModel& model,
                                          const ObjectiveWeights& w, double dt) {
  check_control(u, model);
  const int nt = u.times() - 1;
  const auto tw = trapezoid_weights(nt, dt);
  ControlTrajectory g(u.coils(), u.times());
  for (int j = 0; j < u.coils(); ++j) {
    const double scale = w.beta * model.norm_constant(j);
    for (int k = 0; k <= nt; ++k) g(j, k) += scale * tw[k] * u(j, k);
    const double s1 = scale * w.beta1 / dt;
    for (int k = 0; k < nt; ++k) {
      const double q = u(j, k + 1) - u(j, k);
      g(j, k + 1) += s1 * q;
      g(j, k) -= s1 * q;
    }
    const double s2 = scale * w.beta2 / (dt * dt * dt);
    for (int k = 1; k < nt; ++k) {
      const double q = u(j, k + 1) - 2.0 * u(j, k) + u(j, k - 1);
      g(j, k + 1) += s2 * q;
      g(j, k) -= 2.0 * s2 * q;
      g(j, k - 1) += s2 * q;
    }
  }
  return g;
}

ObjectiveValue objective_eval(const ForwardRun& run, const ControlTrajectory& u, const ControlModel& model,
                              const TargetDensity& target, const ObjectiveWeights& w) {
  ObjectiveValue v;
  if (w.tracking) v.tracking = tracking_term(run.rho, target, run.grid);
  v.regularization = regularization_term(u, model, w, run.grid.dt);
  return v;
}

TargetDensity target_from_run(const ForwardRun& run) { return TargetDensity{run.rho}; }

TargetDensity zero_target(const PhaseGrid& grid) {
  return TargetDensity{std::vector<SpatialScalar>(grid.nt + 1, SpatialScalar(grid.nx))};
}

}  // namespace vctl
