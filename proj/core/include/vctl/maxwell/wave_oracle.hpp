#pragma once

#include <functional>

#include "vctl/core/kinematics.hpp"

namespace vctl {

using SpaceTimeFunction = std::function<double(double t, const Vec2& x)>;
using SpaceFunction = std::function<double(const Vec2& x)>;

struct WaveOracleOptions {
  int radial_nodes = 64;
  int angular_nodes = 64;
  int time_nodes = 256;
  /// Evaluation points must satisfy |x_i| <= extent.
  double extent = 1e300;
};

/// Solution of u_tt - Lap u = source in the plane with u(0) = g, u_t(0) = h,
/// from the retarded-integral formula with the disc singularity removed by
/// the substitution s = sqrt((t - tau)^2 - r^2). Empty functions count as zero.
double wave_oracle(const SpaceTimeFunction& source, const SpaceFunction& g, const SpaceFunction& h, double t,
                   const Vec2& x, const WaveOracleOptions& options = {});

}  // namespace vctl
