#include "vctl/vlasov/interpolation.hpp"

#include <cmath>

namespace vctl {

CubicWeights cubic_weights(double a) {
  const double am = a - 1.0;
  const double a2 = a - 2.0;
  const double ap = a + 1.0;
  return {{-a * am * a2 / 6.0, ap * am * a2 / 2.0, -ap * a * a2 / 2.0, ap * a * am / 6.0}};
}

CubicWeights cubic_weight_derivatives(double a) {
  // Derivatives of the products above, expanded as polynomials in a.
  return {{-(3.0 * a * a - 6.0 * a + 2.0) / 6.0, (3.0 * a * a - 4.0 * a - 1.0) / 2.0,
           -(3.0 * a * a - 2.0 * a - 2.0) / 2.0, (3.0 * a * a - 1.0) / 6.0}};
}

double interpolate_line(std::span<const double> v, double s) {
  const double fl = std::floor(s);
  const int o = static_cast<int>(fl);
  const CubicWeights w = cubic_weights(s - fl);
  const int n = static_cast<int>(v.size());
  double out = 0.0;
  for (int t = 0; t < 4; ++t) {
    const int k = o - 1 + t;
    if (k >= 0 && k < n) out += w.w[t] * v[k];
  }
  return out;
}

double interpolate4(const Distribution& f, const Vec2& x, const Vec2& p) {
  const PhaseGrid& g = f.grid();
  if (std::abs(x.x1) > g.x_extent || std::abs(x.x2) > g.x_extent || std::abs(p.x1) > g.p_extent ||
      std::abs(p.x2) > g.p_extent)
    return 0.0;
  const double pos[4] = {(x.x1 + g.x_extent) / g.dx() - 0.5, (x.x2 + g.x_extent) / g.dx() - 0.5,
                         (p.x1 + g.p_extent) / g.dp() - 0.5, (p.x2 + g.p_extent) / g.dp() - 0.5};
  const int n[4] = {g.nx, g.nx, g.np, g.np};
  int base[4];
  CubicWeights w[4];
  for (int d = 0; d < 4; ++d) {
    const double fl = std::floor(pos[d]);
    base[d] = static_cast<int>(fl) - 1;
    w[d] = cubic_weights(pos[d] - fl);
  }
  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    const int i1 = base[0] + a;
    if (i1 < 0 || i1 >= n[0]) continue;
    for (int b = 0; b < 4; ++b) {
      const int i2 = base[1] + b;
      if (i2 < 0 || i2 >= n[1]) continue;
      for (int c = 0; c < 4; ++c) {
        const int j1 = base[2] + c;
        if (j1 < 0 || j1 >= n[2]) continue;
        for (int d = 0; d < 4; ++d) {
          const int j2 = base[3] + d;
          if (j2 < 0 || j2 >= n[3]) continue;
          out += w[0].w[a] * w[1].w[b] * w[2].w[c] * w[3].w[d] * f(i1, i2, j1, j2);
        }
      }
    }
  }
  return out;
}

}  // namespace vctl
