#pragma once

#include <vector>

#include "vctl/core/distribution.hpp"
#include "vctl/core/field_state.hpp"
#include "vctl/core/moments.hpp"

namespace vctl {

/// Force coefficients at cell centres; K(x, p) = (E1 + v2 B, E2 - v1 B).
struct CellForces {
  SpatialScalar e1;
  SpatialScalar e2;
  SpatialScalar b;

  CellForces() = default;
  explicit CellForces(int nx) : e1(nx), e2(nx), b(nx) {}
  int nx() const { return e1.nx; }
  bool zero() const;
  void axpy(double a, const CellForces& other);
};

/// Staggered fields averaged to cell centres: E through faces_to_centers, B through the four corners.
CellForces cell_forces(const FaceVector& e, const std::vector<double>& b);
/// Transpose of cell_forces: returns the face and node cotangents of a cell-force cotangent.
void cell_forces_transpose(const CellForces& k, FaceVector& e, std::vector<double>& b);

/// Free-streaming shift f(x, p) <- f(x - tau v(p), p) by separable cubic interpolation.
class XShift {
 public:
  XShift() = default;
  XShift(const PhaseGrid& grid, double tau);

  void apply(const Distribution& in, Distribution& out, Distribution& scratch) const;
  void apply_transpose(const Distribution& in, Distribution& out, Distribution& scratch) const;

  /// Shift in conservative form: additionally adds `scale` times the mass
  /// crossing every interior face (summed over momenta) to `flux`, so that
  /// sum_p (out - in) = -(discrete divergence of the flux) / scale.
  void apply(const Distribution& in, Distribution& out, Distribution& scratch, double scale, FaceVector& flux) const;
  /// Transpose of the flux-augmented shift; `flux_cotangent` pairs with `flux`.
  void apply_transpose(const Distribution& in, const FaceVector& flux_cotangent, double scale, Distribution& out,
                       Distribution& scratch) const;
  double tau() const { return tau_; }

 private:
  struct Axis {
    int kmin = 0;
    int kmax = 0;
    std::vector<double> w;  // (kmax - kmin + 1) rows of grid.momenta() weights
    int lmin = 0;
    int lmax = 0;
    std::vector<double> c;  // flux through the right face of cell i: sum_l c_l f(i + l)
  };
  Axis make_axis(const std::vector<double>& velocity) const;
  void shift(const Axis& axis, int dim, int sign, const Distribution& in, Distribution& out) const;
  void add_flux(const Axis& axis, int dim, const Distribution& in, double scale, FaceVector& flux) const;
  void add_flux_transpose(const Axis& axis, int dim, const FaceVector& cot, double scale, Distribution& out) const;

  PhaseGrid grid_{};
  double tau_ = 0.0;
  Axis a1_;
  Axis a2_;
};

/// Momentum advection at fixed x over one step with cell forces frozen.
///
/// Feet are traced backwards with the second-order midpoint rule
/// p_mid = p - dt/2 K(p), foot = p - dt K(p_mid) and f is read off by
/// 16-point cubic interpolation in (p1, p2).
class MomentumStep {
 public:
  MomentumStep() = default;
  explicit MomentumStep(const PhaseGrid& grid);

  void apply(const Distribution& in, const CellForces& k, double dt, Distribution& out) const;
  /// out = S[K] df + (dS/dK)[dk] f.
  void apply_tangent(const Distribution& f, const Distribution& df, const CellForces& k, const CellForces& dk,
                     double dt, Distribution& out) const;
  /// Transpose of the tangent map: a_in = S[K]^T a_out and a_k = (dS/dK)^T a_out (both overwritten).
  void apply_adjoint(const Distribution& f, const Distribution& a_out, const CellForces& k, double dt,
                     Distribution& a_in, CellForces& a_k) const;

 private:
  PhaseGrid grid_{};
  MomentumTables tables_;
};

/// One Strang step x(dt/2) -> p(dt) -> x(dt/2) with fields frozen.
Distribution transport_step(const Distribution& f, const FieldState& fields, double dt);

/// Mass in the outer `layers` momentum layers.
double momentum_boundary_mass(const Distribution& f, int layers = 2);

}  // namespace vctl
