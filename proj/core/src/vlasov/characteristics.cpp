#include "vctl/vlasov/characteristics.hpp"

#include <cmath>

namespace vctl {

Vec2 ForceField::operator()(double t, const Vec2& x, const Vec2& p) const {
  const PointField pf = fields(t, x);
  return lorentz_force(pf.e, pf.b, relativistic_velocity(p));
}

double ForceField::momentum_divergence(double t, const Vec2& x, const Vec2& p, double h) const {
  const Vec2 e1{h, 0.0};
  const Vec2 e2{0.0, h};
  const double d1 = ((*this)(t, x, p + e1).x1 - (*this)(t, x, p - e1).x1) / (2.0 * h);
  const double d2 = ((*this)(t, x, p + e2).x2 - (*this)(t, x, p - e2).x2) / (2.0 * h);
  return d1 + d2;
}

FieldSampler field_timeline(const PhaseGrid& grid, const FieldState& at_t0, double t0, const FieldState& at_t1,
                            double t1) {
  return [grid, at_t0, at_t1, t0, t1](double t, const Vec2& x) {
    const double s = t1 == t0 ? 0.0 : (t - t0) / (t1 - t0);
    const PointField a = interpolate_fields(at_t0, grid, x);
    const PointField b = interpolate_fields(at_t1, grid, x);
    return PointField{a.e * (1.0 - s) + b.e * s, a.b * (1.0 - s) + b.b * s};
  };
}

FieldSampler uniform_fields(const Vec2& e, double b) {
  return [e, b](double, const Vec2&) { return PointField{e, b}; };
}

TraceResult trace_characteristic(double t_from, double t_to, const PhasePoint& start, const ForceField& force,
                                 const PhaseGrid& grid, int substeps) {
  TraceResult r{start, false};
  const double h = (t_to - t_from) / substeps;
  double t = t_from;
  auto outside = [&](const Vec2& p) { return std::abs(p.x1) > grid.p_extent || std::abs(p.x2) > grid.p_extent; };
  for (int s = 0; s < substeps; ++s) {
    const Vec2 x = r.end.x;
    const Vec2 p = r.end.p;
    const Vec2 xm = x + relativistic_velocity(p) * (0.5 * h);
    const Vec2 pm = p + force(t, x, p) * (0.5 * h);
    r.end.x = x + relativistic_velocity(pm) * h;
    r.end.p = p + force(t + 0.5 * h, xm, pm) * h;
    t += h;
    if (outside(pm) || outside(r.end.p)) r.escaped = true;
  }
  return r;
}

}  // namespace vctl
