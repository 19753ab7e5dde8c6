#include "vctl/optimize/box.hpp"

#include <algorithm>
#include <cmath>

namespace vctl {

ControlTrajectory project_box(const ControlTrajectory& u) {
  ControlTrajectory out = u;
  for (double& v : out.values()) v = std::clamp(v, -1.0, 1.0);
  return out;
}

double projected_gradient_norm(const ControlTrajectory& u, const ControlTrajectory& grad) {
  double s = 0.0;
  const auto uv = u.values();
  const auto gv = grad.values();
  for (std::size_t k = 0; k < uv.size(); ++k) {
    const double d = uv[k] - std::clamp(uv[k] - gv[k], -1.0, 1.0);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace vctl
