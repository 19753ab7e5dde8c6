#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace vctl {

/// Uniform cell-centred grid over the truncated phase space [-X,X]^2 x [-P,P]^2.
///
/// Spatial samples sit at cell centres x_i = -X + (i + 1/2) dx and momentum
/// samples at p_j = -P + (j + 1/2) dp. Phase-space arrays are stored row-major
/// in (x1, x2, p1, p2) order so that the momentum block of one spatial cell is
/// contiguous.
struct PhaseGrid {
  double x_extent = 1.0;
  double p_extent = 1.0;
  int nx = 2;
  int np = 2;
  double dt = 0.1;
  int nt = 1;

  double dx() const { return 2.0 * x_extent / nx; }
  double dp() const { return 2.0 * p_extent / np; }
  double final_time() const { return dt * nt; }
  double time(int step) const { return dt * step; }

  double x_center(int i) const { return -x_extent + (i + 0.5) * dx(); }
  double p_center(int j) const { return -p_extent + (j + 0.5) * dp(); }
  /// Coordinate of grid line i (cell faces and nodes), i in [0, nx].
  double x_line(int i) const { return -x_extent + i * dx(); }

  std::size_t cells() const { return static_cast<std::size_t>(nx) * nx; }
  std::size_t momenta() const { return static_cast<std::size_t>(np) * np; }
  std::size_t size() const { return cells() * momenta(); }

  std::size_t cell(int i1, int i2) const { return static_cast<std::size_t>(i1) * nx + i2; }
  std::size_t momentum(int j1, int j2) const { return static_cast<std::size_t>(j1) * np + j2; }
  std::size_t index(int i1, int i2, int j1, int j2) const {
    return cell(i1, i2) * momenta() + momentum(j1, j2);
  }

  /// Every broken structural invariant (positivity, dt <= dx), empty when valid.
  std::vector<std::string> violations() const;
  /// Throws ConfigError listing all violations.
  void validate() const;

  friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;
};

/// Staggered-grid CFL bound dt <= dx / sqrt(2) for the two-dimensional leapfrog.
double maxwell_cfl_limit(const PhaseGrid& grid);

}  // namespace vctl
