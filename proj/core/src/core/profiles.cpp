#include "vctl/core/profiles.hpp"

#include <cmath>

namespace vctl {

double smooth_bump(double s) {
  const double a = s * s;
  if (a >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - a));
}

double BlobProfile::operator()(const Vec2& x, const Vec2& p) const {
  const Vec2 dx = x - center;
  const Vec2 dp = p - drift;
  const double wx = smooth_bump(norm(dx) / radius_x);
  if (wx == 0.0) return 0.0;
  const double wp = smooth_bump(norm(dp) / radius_p);
  if (wp == 0.0) return 0.0;
  const double gx = std::exp(-0.5 * dot(dx, dx) / (sigma_x * sigma_x));
  const double gp = std::exp(-0.5 * dot(dp, dp) / (sigma_p * sigma_p));
  return amplitude * gx * gp * wx * wp;
}

}  // namespace vctl
