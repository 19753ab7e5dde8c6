#include "vctl/optimize/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "vctl/core/error.hpp"
#include "vctl/optimize/box.hpp"

namespace vctl {

std::vector<std::string> OptimizerConfig::violations() const {
  std::vector<std::string> v;
  if (max_iters < 0) v.push_back("optimizer.max_iters must be >= 0");
  if (!(c1 > 0.0 && c1 < 1.0)) v.push_back("optimizer.c1 must lie in (0, 1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) v.push_back("optimizer.backtrack must lie in (0, 1)");
  if (!(pg_tolerance >= 0.0)) v.push_back("optimizer.pg_tolerance must be >= 0");
  if (!(objective_tolerance >= 0.0)) v.push_back("optimizer.objective_tolerance must be >= 0");
  if (max_backtracks < 1) v.push_back("optimizer.max_backtracks must be >= 1");
  return v;
}

std::string to_string(OptimizerStatus status) {
  switch (status) {
    case OptimizerStatus::converged: return "converged";
    case OptimizerStatus::stationary: return "stationary";
    case OptimizerStatus::stagnated: return "stagnated";
    case OptimizerStatus::max_iterations: return "max_iterations";
    case OptimizerStatus::line_search_failed: return "line_search_failed";
  }
  return "unknown";
}

namespace {

IterationRecord make_record(int iter, const Evaluation& ev, const ControlTrajectory& u, double step,
                            int backtracks) {
  const KKTReport kkt = kkt_residuals(u, ev.gradient);
  IterationRecord r;
  r.iter = iter;
  r.objective = ev.value.total();
  r.tracking = ev.value.tracking;
  r.regularization = ev.value.regularization;
  r.step = step;
  r.pg_norm = projected_gradient_norm(u, ev.gradient);
  r.stationarity = kkt.stationarity;
  r.complementarity = kkt.complementarity;
  r.feasibility = kkt.feasibility;
  r.backtracks = backtracks;
  return r;
}

double sup_norm(const ControlTrajectory& g) { return g.max_abs(); }

}  // namespace

OptimizeResult minimize(ReducedObjective& problem, const ControlTrajectory& init, const OptimizerConfig& config,
                        const std::function<void(const IterationRecord&)>& on_iteration) {
  if (auto v = config.violations(); !v.empty()) throw ConfigError(std::move(v));

  OptimizeResult result;
  ControlTrajectory u = project_box(init);
  Evaluation ev = problem.evaluate(u, true);
  if (!std::isfinite(ev.value.total())) throw NumericalError("objective is not finite at the initial control");

  IterationRecord rec = make_record(0, ev, u, 0.0, 0);
  result.history.push_back(rec);
  if (on_iteration) on_iteration(rec);
  result.initial_pg_norm = rec.pg_norm;
  result.initial_gradient_norm = ev.gradient.norm();

  auto finish = [&](OptimizerStatus status) {
    result.status = status;
    result.kkt = kkt_residuals(u, ev.gradient);
    result.u = std::move(u);
    result.gradient = std::move(ev.gradient);
    return std::move(result);
  };

  if (rec.pg_norm == 0.0) return finish(OptimizerStatus::stationary);
  const double pg_target = config.pg_tolerance * result.initial_pg_norm;

  double alpha = config.initial_step > 0.0 ? config.initial_step : 0.5 / std::max(sup_norm(ev.gradient), 1e-300);
  ControlTrajectory u_prev;
  ControlTrajectory g_prev;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    if (config.barzilai_borwein && iter > 1) {
      ControlTrajectory s = u;
      s.axpy(-1.0, u_prev);
      ControlTrajectory y = ev.gradient;
      y.axpy(-1.0, g_prev);
      const double sy = s.dot(y);
      const double ss = s.dot(s);
      if (sy > 0.0 && ss > 0.0) alpha = ss / sy;
      else alpha = alpha / config.backtrack;
    }

    const double phi = ev.value.total();
    Evaluation trial;
    ControlTrajectory ut;
    bool accepted = false;
    int backtracks = 0;
    for (; backtracks < config.max_backtracks; ++backtracks, alpha *= config.backtrack) {
      ut = u;
      ut.axpy(-alpha, ev.gradient);
      ut = project_box(ut);
      ControlTrajectory step = ut;
      step.axpy(-1.0, u);
      if (step.max_abs() == 0.0) return finish(OptimizerStatus::stationary);
      const double slope = ev.gradient.dot(step);
      try {
        trial = problem.evaluate(ut, backtracks == 0);
      } catch (const NumericalError&) {
        continue;
      }
      const double value = trial.value.total();
      if (std::isfinite(value) && value <= phi + config.c1 * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) return finish(OptimizerStatus::line_search_failed);
    if (!trial.has_gradient) trial = problem.evaluate(ut, true);

    u_prev = std::move(u);
    g_prev = std::move(ev.gradient);
    u = std::move(ut);
    ev = std::move(trial);

    rec = make_record(iter, ev, u, alpha, backtracks);
    result.history.push_back(rec);
    if (on_iteration) on_iteration(rec);

    if (rec.pg_norm <= pg_target) return finish(OptimizerStatus::converged);
    const double decrease = phi - ev.value.total();
    if (decrease <= config.objective_tolerance * std::max(std::abs(phi), 1e-300))
      return finish(OptimizerStatus::stagnated);
  }
  return finish(OptimizerStatus::max_iterations);
}

}  // namespace vctl
