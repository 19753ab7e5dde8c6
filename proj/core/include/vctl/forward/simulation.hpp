#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vctl/core/control.hpp"
#include "vctl/core/distribution.hpp"
#include "vctl/core/field_state.hpp"
#include "vctl/forward/snapshot_store.hpp"
#include "vctl/maxwell/maxwell.hpp"
#include "vctl/vlasov/transport.hpp"

namespace vctl {

/// Static neutralising charge paired with the initial plasma.
enum class BackgroundMode {
  local,    // b = rho of f0 cell by cell, so E0 = 0 satisfies the Gauss law
  uniform,  // b = mean of rho of f0, E0 = -grad phi from the Neumann Poisson problem
};

std::string to_string(BackgroundMode mode);
BackgroundMode background_mode_from_string(const std::string& name);

struct InitialData {
  Distribution f0;
  /// E0 and B0 at t = 0.
  FieldState fields;
  SpatialScalar background;
  /// Support radii: R of f0 in x, r0 of f0 in p, R~ of the initial fields.
  double plasma_radius = 0.0;
  double momentum_radius = 0.0;
  double field_radius = 0.0;
  /// Mean charge removed in uniform mode.
  double removed_mean = 0.0;
  /// ||div E0 - (rho0 - b)|| after initialisation.
  double compatibility_residual = 0.0;
};

/// Builds Gauss-compatible initial data; `extra` (divergence free, e.g. a
/// magnetic pulse) is added on top of the electrostatic part.
InitialData make_initial_data(Distribution f0, BackgroundMode mode, const FieldState* extra = nullptr,
                              double field_radius = 0.0);

struct DiagnosticRecord {
  int step = 0;
  double time = 0.0;
  double mass = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double min_value = 0.0;
  double field_energy = 0.0;
  double kinetic_energy = 0.0;
  double total_energy = 0.0;
  double gauss_residual = 0.0;
  double charge_norm = 0.0;
  double support_x = 0.0;
  double support_p = 0.0;
  /// max |K| over cells and momenta of the forces used by the step leaving this level.
  double max_force = 0.0;
  /// Largest field deviation from the initial fields on the outer layer.
  double boundary_field = 0.0;
  double momentum_boundary_mass = 0.0;
};

/// State visible to per-step observers.
struct SimulationState {
  int t_index;
  const Distribution& f;
  const FieldState& fields;
  const SpatialScalar& div_u_integral;
};

struct ForwardOptions {
  int snapshot_stride = 1;
  SnapshotMode snapshot_mode = SnapshotMode::interpolate;
  std::filesystem::path snapshot_directory;
  bool store_snapshots = true;
  /// Extra passes re-centring the momentum step on (E^n + E^{n+1}) / 2 (0 to 2).
  int fixed_point_passes = 0;
  double escape_tolerance = 1e-8;
  /// Abort when the momentum support exceeds this fraction of p_extent.
  double momentum_fraction_limit = 0.9;
  /// Amplitude, relative to max |f0|, above which f counts as present for the abort above.
  double escape_support_epsilon = 1e-6;
  /// Abort when the outer-layer field deviation exceeds this.
  double boundary_field_limit = 1e-4;
  bool abort_on_escape = true;
  /// Zero negative samples after every step and rescale to the pre-clip mass.
  /// Not seen by the tangent and adjoint; charge continuity then holds only up to the clip.
  bool clip_negative = false;
  std::function<void(const SimulationState&)> observer;
};

/// Everything the sensitivity solvers and diagnostics need from one forward solve.
struct ForwardRun {
  PhaseGrid grid;
  SpatialScalar background;
  FieldHistory fields;
  /// Frozen momentum-step forces of step n (n = 0..nt-1).
  std::vector<CellForces> forces;
  /// rho(f^n) and j(f^n) for n = 0..nt.
  std::vector<SpatialScalar> rho;
  std::vector<SpatialVector> current;
  std::vector<DiagnosticRecord> diagnostics;
  std::shared_ptr<SnapshotStore> snapshots;
  Distribution final_f;
};

ForwardRun run_forward(const InitialData& init, const ControlModel& model, const ControlTrajectory& u,
                       const ForwardOptions& options = {});

/// Splitting operators of one grid, shared by forward, tangent and adjoint sweeps.
///
/// The plasma current entering the field update of a step is the face flux of
/// both half shifts times `current_scale`, which makes the discrete charge
/// continuity hold across the x-transport.
struct StepOperators {
  XShift half_shift;
  MomentumStep momentum;
  double current_scale;

  explicit StepOperators(const PhaseGrid& grid);
};

/// Reads f^n (and the intermediate stages of step n) back from a stored run.
class TrajectoryReader {
 public:
  explicit TrajectoryReader(const ForwardRun& run);

  /// f^n for n in [0, nt].
  const Distribution& at(int n);
  /// f* = Sx f^n and f** = Sp[K^n] f* of step n.
  void stages(int n, Distribution& f_star, Distribution& f_star_star);

 private:
  const ForwardRun& run_;
  StepOperators ops_;
  std::map<int, Distribution> cache_;
  Distribution scratch_;
};

}  // namespace vctl
