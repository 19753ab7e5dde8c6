#include "vctl/cli/scenario.hpp"

#include <cmath>
#include <numbers>

#include "vctl/cli/csv.hpp"
#include "vctl/core/error.hpp"
#include "vctl/core/grid_io.hpp"
#include "vctl/core/moments.hpp"
#include "vctl/core/profiles.hpp"
#include "vctl/forward/snapshot_store.hpp"

namespace vctl::cli {

PhaseGrid make_grid(const RunConfig& c) {
  PhaseGrid g;
  g.x_extent = c.grid.x_extent;
  g.p_extent = c.grid.p_extent;
  g.nx = c.grid.nx;
  g.np = c.grid.np;
  g.nt = c.steps();
  g.dt = c.dt();
  g.validate();
  return g;
}

namespace {

BlobProfile blob_profile(const BlobConfig& b) {
  BlobProfile p;
  p.center = b.center;
  p.drift = b.drift;
  p.sigma_x = b.sigma_x;
  p.sigma_p = b.sigma_p;
  p.radius_x = b.radius_x;
  p.radius_p = b.radius_p;
  p.amplitude = b.amplitude;
  return p;
}

}  // namespace

Distribution make_distribution(const RunConfig& c, const PhaseGrid& grid) {
  const InitialConfig& in = c.initial;
  if (in.profile == "zero") return Distribution(grid);
  if (in.profile == "file") return read_distribution(in.path, grid);
  const BlobProfile blob = blob_profile(in.blob);
  if (in.profile == "gaussian-blob") return sample_distribution(grid, blob);
  BlobProfile left = blob;
  BlobProfile right = blob;
  left.center = blob.center - Vec2{0.5 * in.separation, 0.0};
  right.center = blob.center + Vec2{0.5 * in.separation, 0.0};
  left.drift = -blob.drift;
  return sample_distribution(grid, [&](const Vec2& x, const Vec2& p) { return left(x, p) + right(x, p); });
}

ControlTrajectory waveform_control(const WaveformConfig& w, const PhaseGrid& grid) {
  const int coils = static_cast<int>(w.amplitude.size());
  ControlTrajectory u(coils, grid.nt + 1);
  for (int j = 0; j < coils; ++j)
    for (int k = 0; k <= grid.nt; ++k)
      u(j, k) = w.amplitude[j] * std::sin(2.0 * std::numbers::pi * w.frequency[j] * grid.time(k) + w.phase[j]);
  return u;
}

ControlTrajectory make_control(const RunConfig& c, const PhaseGrid& grid, int coils) {
  if (c.control.source == "waveform") return waveform_control(c.control.waveform, grid);
  if (c.control.source == "file") {
    ControlTrajectory u = read_control_csv(c.control.path, grid);
    if (u.coils() != coils)
      throw ConfigError(c.control.path + ": " + std::to_string(u.coils()) + " control columns for " +
                        std::to_string(coils) + " coils");
    return u;
  }
  return ControlTrajectory(coils, grid.nt + 1);
}

ForwardOptions make_forward_options(const RunConfig& c) {
  ForwardOptions o;
  o.snapshot_stride = c.output.snapshot_stride;
  o.snapshot_mode = snapshot_mode_from_string(c.output.snapshot_mode);
  o.snapshot_directory = c.output.snapshot_directory;
  o.fixed_point_passes = c.run.fixed_point_passes;
  o.clip_negative = c.run.clip_negative;
  o.abort_on_escape = c.run.abort_on_escape;
  return o;
}

Scenario build_scenario(const RunConfig& c) {
  Scenario s;
  s.config = c;
  s.grid = make_grid(c);
  s.init = make_initial_data(make_distribution(c, s.grid), background_mode_from_string(c.initial.background));
  if (c.initial.profile == "file") {
    const SupportRadii r = support_radii(s.init.f0);
    if (!(c.grid.p_extent > r.p))
      throw ConfigError("initial.path: momentum support " + std::to_string(r.p) + " reaches grid.p_extent");
  }
  s.model = ControlModel(s.grid, coil_specs(c.coils));
  s.control = make_control(c, s.grid, s.model.coils());
  s.weights.beta = c.objective.beta;
  s.weights.beta1 = c.objective.beta1;
  s.weights.beta2 = c.objective.beta2;
  s.weights.tracking = c.objective.tracking;
  s.options = make_forward_options(c);
  return s;
}

TargetDensity make_target(const Scenario& s) {
  const ObjectiveConfig& o = s.config.objective;
  if (o.target == "zero") return zero_target(s.grid);
  if (o.target == "file") {
    TargetDensity t;
    for (int n = 0; n <= s.grid.nt; ++n)
      t.rho.push_back(read_cell_scalar(std::filesystem::path(o.path) / SnapshotStore::file_name(n), s.grid));
    return t;
  }
  ForwardOptions opt = s.options;
  opt.store_snapshots = false;
  opt.snapshot_directory.clear();
  return target_from_run(run_forward(s.init, s.model, waveform_control(o.twin, s.grid), opt));
}

}  // namespace vctl::cli
