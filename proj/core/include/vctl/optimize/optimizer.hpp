#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vctl/optimize/kkt.hpp"
#include "vctl/sensitivity/reduced_problem.hpp"

namespace vctl {

struct OptimizerConfig {
  int max_iters = 50;
  /// Armijo constant c1 in (0, 1).
  double c1 = 1e-4;
  /// Step reduction factor in (0, 1).
  double backtrack = 0.5;
  /// First trial step; <= 0 selects 0.5 / ||grad||_inf.
  double initial_step = 0.0;
  /// Stop when ||u - P(u - grad)|| <= pg_tolerance * (initial value).
  double pg_tolerance = 1e-3;
  /// Stop when the relative objective decrease of an accepted step falls below this.
  double objective_tolerance = 1e-14;
  int max_backtracks = 40;
  /// Barzilai-Borwein trial steps after the first iteration.
  bool barzilai_borwein = true;

  std::vector<std::string> violations() const;
  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

enum class OptimizerStatus { converged, stationary, stagnated, max_iterations, line_search_failed };
std::string to_string(OptimizerStatus status);

struct IterationRecord {
  int iter = 0;
  double objective = 0.0;
  double tracking = 0.0;
  double regularization = 0.0;
  double step = 0.0;
  double pg_norm = 0.0;
  double stationarity = 0.0;
  double complementarity = 0.0;
  double feasibility = 0.0;
  int backtracks = 0;
};

struct OptimizeResult {
  ControlTrajectory u;
  ControlTrajectory gradient;
  std::vector<IterationRecord> history;
  KKTReport kkt;
  OptimizerStatus status = OptimizerStatus::max_iterations;
  double initial_pg_norm = 0.0;
  double initial_gradient_norm = 0.0;
};

/// Projected gradient descent u <- P(u - a grad) with Armijo backtracking on the projected path.
OptimizeResult minimize(ReducedObjective& problem, const ControlTrajectory& init, const OptimizerConfig& config,
                        const std::function<void(const IterationRecord&)>& on_iteration = {});

}  // namespace vctl
