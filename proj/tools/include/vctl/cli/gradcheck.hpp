#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "vctl/cli/config.hpp"
#include "vctl/sensitivity/reduced_problem.hpp"

namespace vctl::cli {

/// Smooth direction d_j(t) = sum_m a_jm sin(m pi t / T) + b_jm cos(m pi t / T) with
/// uniform random coefficients, scaled to max |d| = 1.
ControlTrajectory random_direction(int coils, const PhaseGrid& grid, int modes, std::mt19937_64& rng);

struct GradcheckRow {
  int direction = 0;
  double eps = 0.0;
  double fd = 0.0;
  double adjoint = 0.0;
  double rel_err = 0.0;
};

struct GradcheckReport {
  std::vector<GradcheckRow> rows;
  /// Per direction: epsilon picked from the FD plateau and the error there.
  std::vector<double> plateau_eps;
  std::vector<double> plateau_rel_err;
  /// Per direction: adjoint gradient . d and the tangent directional derivative.
  std::vector<double> adjoint_value;
  std::vector<double> tangent_value;
  std::vector<double> duality_gap;
  ForwardRun base;
};

/// Adjoint gradient against central differences and the tangent solve, all
/// around one stored base run. The plateau epsilon of a direction is the
/// smallest epsilon whose difference quotient agrees with the next larger one
/// to 1%; without such agreement it is the smallest epsilon.
GradcheckReport gradient_check(ReducedProblem& problem, const ControlTrajectory& u, const GradcheckConfig& cfg,
                               const std::function<void(const std::string&)>& log = {});

void write_gradcheck_csv(const std::filesystem::path& path, const GradcheckReport& report);

}  // namespace vctl::cli
