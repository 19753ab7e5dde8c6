#pragma once

#include <span>
#include <vector>

#include "vctl/core/grid.hpp"
#include "vctl/core/kinematics.hpp"

namespace vctl {

/// Samples of the phase-space density f at one time level.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(const PhaseGrid& grid, double value = 0.0);

  const PhaseGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i1, int i2, int j1, int j2) { return values_[grid_.index(i1, i2, j1, j2)]; }
  double operator()(int i1, int i2, int j1, int j2) const { return values_[grid_.index(i1, i2, j1, j2)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Contiguous momentum block of spatial cell c.
  std::span<double> cell_block(std::size_t c) { return {values_.data() + c * grid_.momenta(), grid_.momenta()}; }
  std::span<const double> cell_block(std::size_t c) const {
    return {values_.data() + c * grid_.momenta(), grid_.momenta()};
  }

  void fill(double v);
  /// this += a * other
  void axpy(double a, const Distribution& other);
  void scale(double a);

  double min_value() const;
  double max_abs() const;

 private:
  PhaseGrid grid_{};
  std::vector<double> values_;
};

/// Samples f(x, p) at every phase-space grid point.
template <class F>
Distribution sample_distribution(const PhaseGrid& grid, F&& profile) {
  Distribution f(grid);
  for (int i1 = 0; i1 < grid.nx; ++i1)
    for (int i2 = 0; i2 < grid.nx; ++i2)
      for (int j1 = 0; j1 < grid.np; ++j1)
        for (int j2 = 0; j2 < grid.np; ++j2)
          f(i1, i2, j1, j2) = profile(Vec2{grid.x_center(i1), grid.x_center(i2)},
                                      Vec2{grid.p_center(j1), grid.p_center(j2)});
  return f;
}

}  // namespace vctl
