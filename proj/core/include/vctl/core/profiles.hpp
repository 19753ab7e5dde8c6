#pragma once

#include "vctl/core/kinematics.hpp"

namespace vctl {

/// C-infinity bump exp(1 - 1/(1 - s^2)) on |s| < 1, zero outside, value 1 at s = 0.
double smooth_bump(double s);

/// Localised plasma blob: Gaussian in x and p, windowed by smooth bumps so
/// that it vanishes identically for |x - center| >= radius_x or
/// |p - drift| >= radius_p.
struct BlobProfile {
  Vec2 center;
  Vec2 drift;
  double sigma_x = 0.5;
  double sigma_p = 0.5;
  double radius_x = 1.0;
  double radius_p = 1.0;
  double amplitude = 1.0;

  double operator()(const Vec2& x, const Vec2& p) const;
  /// Radius about the origin containing the x-support.
  double support_x() const { return norm(center) + radius_x; }
  double support_p() const { return norm(drift) + radius_p; }
};

}  // namespace vctl
