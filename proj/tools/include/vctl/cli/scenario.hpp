#pragma once

#include "vctl/cli/config.hpp"
#include "vctl/core/control.hpp"
#include "vctl/forward/objective.hpp"
#include "vctl/forward/simulation.hpp"

namespace vctl::cli {

/// Everything a command needs, built from a validated config.
struct Scenario {
  RunConfig config;
  PhaseGrid grid;
  InitialData init;
  ControlModel model;
  ControlTrajectory control;
  ObjectiveWeights weights;
  ForwardOptions options;
};

PhaseGrid make_grid(const RunConfig& config);
Distribution make_distribution(const RunConfig& config, const PhaseGrid& grid);
/// u_j(t_k) = a_j sin(2 pi f_j t_k + phi_j).
ControlTrajectory waveform_control(const WaveformConfig& w, const PhaseGrid& grid);
ControlTrajectory make_control(const RunConfig& config, const PhaseGrid& grid, int coils);
ForwardOptions make_forward_options(const RunConfig& config);

Scenario build_scenario(const RunConfig& config);

/// rho_d per the objective block; the twin target is a forward run with the twin waveform.
TargetDensity make_target(const Scenario& scenario);

}  // namespace vctl::cli
