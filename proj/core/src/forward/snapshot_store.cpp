#include "vctl/forward/snapshot_store.hpp"

#include <cstdio>

#include "vctl/core/error.hpp"
#include "vctl/core/grid_io.hpp"

namespace vctl {

std::string to_string(SnapshotMode mode) { return mode == SnapshotMode::interpolate ? "interpolate" : "recompute"; }

SnapshotMode snapshot_mode_from_string(const std::string& name) {
  if (name == "interpolate") return SnapshotMode::interpolate;
  if (name == "recompute") return SnapshotMode::recompute;
  throw ConfigError("unknown snapshot mode '" + name + "' (expected interpolate or recompute)");
}

SnapshotStore::SnapshotStore(const PhaseGrid& grid, int stride, SnapshotMode mode, std::filesystem::path directory)
    : grid_(grid), stride_(stride), mode_(mode), directory_(std::move(directory)) {
  if (stride_ < 1) throw ConfigError("snapshot stride must be at least 1");
  if (!directory_.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (ec) throw IoError("cannot create snapshot directory " + directory_.string());
  }
}

std::string SnapshotStore::file_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%06d.vctl", step);
  return buf;
}

void SnapshotStore::put(int step, const Distribution& f) {
  if (!stores(step)) return;
  if (directory_.empty()) {
    memory_[step] = f;
  } else {
    write_distribution(directory_ / file_name(step), f, static_cast<std::uint64_t>(step), grid_.time(step));
    on_disk_[step] = true;
  }
}

bool SnapshotStore::has(int step) const { return memory_.count(step) || on_disk_.count(step); }

Distribution SnapshotStore::get(int step) const {
  if (auto it = memory_.find(step); it != memory_.end()) return it->second;
  if (on_disk_.count(step)) return read_distribution(directory_ / file_name(step), grid_);
  throw ConfigError("snapshot for step " + std::to_string(step) + " is not stored");
}

const Distribution* SnapshotStore::peek(int step) const {
  auto it = memory_.find(step);
  return it == memory_.end() ? nullptr : &it->second;
}

int SnapshotStore::stored_at_or_before(int step) const {
  for (int s = step; s >= 0; --s)
    if (has(s)) return s;
  throw ConfigError("no stored snapshot at or before step " + std::to_string(step));
}

int SnapshotStore::stored_after(int step) const {
  for (int s = step + 1; s <= grid_.nt; ++s)
    if (has(s)) return s;
  throw ConfigError("no stored snapshot after step " + std::to_string(step));
}

}  // namespace vctl
