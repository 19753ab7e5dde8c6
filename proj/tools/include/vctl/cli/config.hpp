#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vctl/core/control.hpp"
#include "vctl/optimize/optimizer.hpp"

namespace vctl::cli {

struct GridConfig {
  double x_extent = 4.0;
  double p_extent = 3.5;
  int nx = 32;
  int np = 32;
  double final_time = 1.0;
  int nt = 128;
  /// When positive, nt is derived from dt = cfl * dx / sqrt(2).
  double cfl = 0.0;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct BlobConfig {
  Vec2 center;
  Vec2 drift;
  double sigma_x = 0.5;
  double sigma_p = 0.4;
  double radius_x = 1.2;
  double radius_p = 1.0;
  double amplitude = 1.0;

  friend bool operator==(const BlobConfig&, const BlobConfig&) = default;
};

struct InitialConfig {
  /// gaussian-blob | two-bump | zero | file
  std::string profile = "gaussian-blob";
  /// local | uniform
  std::string background = "local";
  BlobConfig blob;
  /// two-bump: blob copies at center -/+ (separation / 2, 0) drifting -/+ drift.
  double separation = 1.2;
  std::string path;

  friend bool operator==(const InitialConfig&, const InitialConfig&) = default;
};

struct CoilsConfig {
  /// ring-coil | crossed-coils | none | list
  std::string preset = "ring-coil";
  int count = 2;
  double offset = 0.6;
  double radius = 0.8;
  double amplitude = 3.0;
  std::vector<CoilSpec> list;

  friend bool operator==(const CoilsConfig&, const CoilsConfig&) = default;
};

/// u_j(t) = amplitude_j sin(2 pi frequency_j t + phase_j).
struct WaveformConfig {
  std::vector<double> amplitude;
  std::vector<double> frequency;
  std::vector<double> phase;

  friend bool operator==(const WaveformConfig&, const WaveformConfig&) = default;
};

struct ControlConfig {
  /// zeros | waveform | file
  std::string source = "zeros";
  WaveformConfig waveform;
  std::string path;

  friend bool operator==(const ControlConfig&, const ControlConfig&) = default;
};

struct ObjectiveConfig {
  /// zero | twin | file
  std::string target = "twin";
  WaveformConfig twin{{0.5, -0.4}, {0.5, 1.0}, {0.0, 0.0}};
  std::string path;
  double beta = 1e-3;
  double beta1 = 1e-5;
  double beta2 = 1e-10;
  bool tracking = true;

  friend bool operator==(const ObjectiveConfig&, const ObjectiveConfig&) = default;
};

struct GradcheckConfig {
  int directions = 5;
  std::uint64_t seed = 1;
  /// Temporal Fourier modes per coil in a random direction.
  int modes = 3;
  std::vector<double> epsilons{1e-2, 1e-3};
  /// Base point as a multiple of the twin control.
  double base_scale = 0.5;

  friend bool operator==(const GradcheckConfig&, const GradcheckConfig&) = default;
};

struct OutputConfig {
  std::string directory = "vctl-out";
  std::vector<int> snapshot_steps;
  int snapshot_stride = 1;
  std::string snapshot_mode = "interpolate";
  std::string snapshot_directory;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunSection {
  int threads = 1;
  int fixed_point_passes = 0;
  bool abort_on_escape = true;
  bool clip_negative = false;

  friend bool operator==(const RunSection&, const RunSection&) = default;
};

struct ValidateConfig {
  std::vector<std::string> suites{"all"};

  friend bool operator==(const ValidateConfig&, const ValidateConfig&) = default;
};

struct RunConfig {
  GridConfig grid;
  InitialConfig initial;
  CoilsConfig coils;
  ControlConfig control;
  ObjectiveConfig objective;
  OptimizerConfig optimizer;
  GradcheckConfig gradcheck;
  OutputConfig output;
  RunSection run;
  ValidateConfig validate;

  /// Time step implied by the grid block.
  double dt() const;
  int steps() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a YAML document, applies VCTL_* overrides from `env` and validates.
/// Throws ConfigError carrying every violation found.
RunConfig parse_config_string(const std::string& text, const std::map<std::string, std::string>& env = {});
RunConfig parse_config(const std::filesystem::path& path);

/// Environment variables with the VCTL_ prefix, e.g. VCTL_GRID_NX=48 for grid.nx.
std::map<std::string, std::string> config_environment();

/// Every semantic violation of an already decoded config.
std::vector<std::string> config_violations(const RunConfig& config);

/// Coils generated by a preset (or the explicit list).
std::vector<CoilSpec> coil_specs(const CoilsConfig& coils);
/// Support radii of the configured initial plasma in x and p; a file profile counts as filling the box.
double plasma_radius(const RunConfig& config);
double plasma_momentum_radius(const RunConfig& config);

/// Normalised YAML with every field spelled out; parse(dump(c)) == c.
std::string dump_config(const RunConfig& config);

}  // namespace vctl::cli
