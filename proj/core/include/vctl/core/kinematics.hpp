#pragma once

#include <cmath>

namespace vctl {

/// Planar vector used for positions, momenta and in-plane field values.
struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x1 += o.x1;
    x2 += o.x2;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x1 -= o.x1;
    x2 -= o.x2;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x1 *= s;
    x2 *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x1, -a.x2}; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double norm(const Vec2& a) { return std::hypot(a.x1, a.x2); }

/// Lorentz factor sqrt(1 + |p|^2) in units with c = m = 1.
inline double lorentz_factor(const Vec2& p) { return std::sqrt(1.0 + dot(p, p)); }

/// Particle velocity p / sqrt(1 + |p|^2); always strictly sub-luminal.
Vec2 relativistic_velocity(const Vec2& p);

/// In-plane rotation by +90 degrees: (a1, a2) -> (-a2, a1).
constexpr Vec2 perp(const Vec2& a) { return {-a.x2, a.x1}; }

/// Lorentz-type force E - v_perp * B for a particle with velocity v.
constexpr Vec2 lorentz_force(const Vec2& e, double b, const Vec2& velocity) {
  return e - perp(velocity) * b;
}

}  // namespace vctl
