#pragma once

#include <vector>

#include "vctl/core/control.hpp"
#include "vctl/core/field_state.hpp"
#include "vctl/core/grid.hpp"

namespace vctl {

/// curl B = (d2 B, -d1 B) on interior faces; boundary nodes read as zero.
FaceVector curl_b_to_faces(const std::vector<double>& b, int nx, double dx);
/// curl E = d1 E2 - d2 E1 on interior nodes. Exact transpose of curl_b_to_faces.
std::vector<double> curl_e_to_nodes(const FaceVector& e, double dx);
/// Cell-centred divergence of a face field.
SpatialScalar divergence(const FaceVector& e, double dx);

/// Currents driving one field update, both sampled at the half step.
struct MaxwellSource {
  FaceVector j_plasma;
  FaceVector u_ext;
};

/// B^0 -> B^{1/2} = B^0 - dt/2 curl E^0, turning integer-time data into leapfrog form.
void start_leapfrog(FieldState& fields, double dt, double dx);
/// B^{-1/2} = B^0 + dt/2 curl E^0, used by the energy of the initial state.
std::vector<double> initial_lagging_b(const FieldState& integer_time_fields, double dt, double dx);

/// One leapfrog update: E^{n+1} = E^n + dt (curl B^{n+1/2} - j - U),
/// B^{n+3/2} = B^{n+1/2} - dt curl E^{n+1}. Boundary samples stay zero.
void maxwell_step_in_place(FieldState& fields, const FaceVector& total_current, double dt, double dx);
FieldState maxwell_step(const FieldState& fields, const MaxwellSource& src, double dt, double dx);

/// Discrete energy 1/2 dx^2 (|E^n|^2 + B^{n-1/2} B^{n+1/2}), conserved exactly in vacuum.
double leapfrog_field_energy(const FaceVector& e, const std::vector<double>& b_lagging,
                             const std::vector<double>& b_leading, double dx);

/// Field history of a leapfrog run: entry n holds E^n and B^{n+1/2}.
struct FieldHistory {
  std::vector<FieldState> states;
  std::vector<double> b_initial_lagging;

  const std::vector<double>& b_lagging(int n) const { return n == 0 ? b_initial_lagging : states[n - 1].b; }
};

/// Fields of the control current alone with zero initial data, for n = 0..nt.
FieldHistory external_field_solve(const PhaseGrid& grid, const ControlModel& model, const ControlTrajectory& u);

/// Discrete L2 norm of div E - (rho - background) + accumulated div U.
double divergence_residual(const FieldState& fields, const SpatialScalar& rho, const SpatialScalar& background,
                           const SpatialScalar& div_u_integral, double dx);

}  // namespace vctl
