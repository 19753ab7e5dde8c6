#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "vctl/core/distribution.hpp"

namespace vctl {

/// How the sensitivity solvers obtain f^n for steps that were not stored.
enum class SnapshotMode {
  interpolate,  // linear interpolation in time between stored neighbours
  recompute,    // replay the transport from the previous stored step
};

std::string to_string(SnapshotMode mode);
SnapshotMode snapshot_mode_from_string(const std::string& name);

/// Distribution snapshots of a forward run, every `stride` steps plus the final step.
///
/// With a directory the snapshots live on disk as step_NNNNNN.vctl files in
/// the binary dump format, otherwise in memory.
class SnapshotStore {
 public:
  SnapshotStore(const PhaseGrid& grid, int stride, SnapshotMode mode, std::filesystem::path directory = {});

  const PhaseGrid& grid() const { return grid_; }
  int stride() const { return stride_; }
  SnapshotMode mode() const { return mode_; }
  const std::filesystem::path& directory() const { return directory_; }

  bool stores(int step) const { return step % stride_ == 0 || step == grid_.nt; }
  void put(int step, const Distribution& f);
  bool has(int step) const;
  /// Stored snapshot; throws ConfigError when the step is missing.
  Distribution get(int step) const;
  /// In-memory snapshot without copying; null for missing or on-disk steps.
  const Distribution* peek(int step) const;
  /// Nearest stored steps at or before / strictly after `step`.
  int stored_at_or_before(int step) const;
  int stored_after(int step) const;

  static std::string file_name(int step);

 private:
  PhaseGrid grid_;
  int stride_;
  SnapshotMode mode_;
  std::filesystem::path directory_;
  std::map<int, Distribution> memory_;
  std::map<int, bool> on_disk_;
};

}  // namespace vctl
