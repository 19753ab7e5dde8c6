#include "vctl/core/kinematics.hpp"

namespace vctl {

Vec2 relativistic_velocity(const Vec2& p) { return p * (1.0 / lorentz_factor(p)); }

}  // namespace vctl
