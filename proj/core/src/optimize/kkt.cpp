#include "vctl/optimize/kkt.hpp"

#include <algorithm>
#include <cmath>

namespace vctl {

KKTReport kkt_residuals(const ControlTrajectory& u, const ControlTrajectory& grad) {
  KKTReport r;
  r.lambda_plus = ControlTrajectory(u.coils(), u.times());
  r.lambda_minus = ControlTrajectory(u.coils(), u.times());
  r.stationarity_field = ControlTrajectory(u.coils(), u.times());
  for (int j = 0; j < u.coils(); ++j)
    for (int k = 0; k < u.times(); ++k) {
      const double v = u(j, k);
      const double g = grad(j, k);
      double res = std::abs(g);
      if (v >= 1.0 && g != 0.0) {
        r.lambda_plus(j, k) = std::max(-g, 0.0);
        res = std::max(g, 0.0);
      } else if (v <= -1.0 && g != 0.0) {
        r.lambda_minus(j, k) = std::max(g, 0.0);
        res = std::max(-g, 0.0);
      }
      r.stationarity_field(j, k) = res;
      r.stationarity = std::max(r.stationarity, res);
      r.complementarity = std::max({r.complementarity, std::abs(r.lambda_plus(j, k) * (1.0 - v)),
                                    std::abs(r.lambda_minus(j, k) * (v + 1.0))});
      r.feasibility = std::max(r.feasibility, std::max(std::abs(v) - 1.0, 0.0));
    }
  return r;
}

}  // namespace vctl
