#include "vctl/maxwell/maxwell.hpp"

#include <cmath>

namespace vctl {
namespace {

bool interior(int i, int nx) { return i > 0 && i < nx; }

}  // namespace

FaceVector curl_b_to_faces(const std::vector<double>& b, int nx, double dx) {
  FaceVector out(nx);
  const double inv = 1.0 / dx;
  auto node = [&](int i, int j) { return interior(i, nx) && interior(j, nx) ? b[node_index(nx, i, j)] : 0.0; };
  for (int i = 1; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      out.c1[face1_index(nx, i, j)] = (node(i, j + 1) - node(i, j)) * inv;
      out.c2[face2_index(nx, j, i)] = -(node(j + 1, i) - node(j, i)) * inv;
    }
  return out;
}

std::vector<double> curl_e_to_nodes(const FaceVector& e, double dx) {
  const int nx = e.nx;
  std::vector<double> out(node_count(nx), 0.0);
  const double inv = 1.0 / dx;
  for (int i = 1; i < nx; ++i)
    for (int j = 1; j < nx; ++j)
      out[node_index(nx, i, j)] = (e.c2[face2_index(nx, i, j)] - e.c2[face2_index(nx, i - 1, j)] -
                                   e.c1[face1_index(nx, i, j)] + e.c1[face1_index(nx, i, j - 1)]) *
                                  inv;
  return out;
}

SpatialScalar divergence(const FaceVector& e, double dx) {
  const int nx = e.nx;
  SpatialScalar out(nx);
  const double inv = 1.0 / dx;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j)
      out(i, j) = (e.c1[face1_index(nx, i + 1, j)] - e.c1[face1_index(nx, i, j)] + e.c2[face2_index(nx, i, j + 1)] -
                   e.c2[face2_index(nx, i, j)]) *
                  inv;
  return out;
}

void start_leapfrog(FieldState& fields, double dt, double dx) {
  const auto curl = curl_e_to_nodes(fields.e, dx);
  for (std::size_t k = 0; k < fields.b.size(); ++k) fields.b[k] -= 0.5 * dt * curl[k];
}

std::vector<double> initial_lagging_b(const FieldState& integer_time_fields, double dt, double dx) {
  std::vector<double> b = integer_time_fields.b;
  const auto curl = curl_e_to_nodes(integer_time_fields.e, dx);
  for (std::size_t k = 0; k < b.size(); ++k) b[k] += 0.5 * dt * curl[k];
  return b;
}

void maxwell_step_in_place(FieldState& fields, const FaceVector& total_current, double dt, double dx) {
  const int nx = fields.nx;
  const FaceVector curl_b = curl_b_to_faces(fields.b, nx, dx);
  for (int i = 1; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      const std::size_t k1 = face1_index(nx, i, j);
      const std::size_t k2 = face2_index(nx, j, i);
      fields.e.c1[k1] += dt * (curl_b.c1[k1] - total_current.c1[k1]);
      fields.e.c2[k2] += dt * (curl_b.c2[k2] - total_current.c2[k2]);
    }
  const auto curl_e = curl_e_to_nodes(fields.e, dx);
  for (std::size_t k = 0; k < fields.b.size(); ++k) fields.b[k] -= dt * curl_e[k];
}

FieldState maxwell_step(const FieldState& fields, const MaxwellSource& src, double dt, double dx) {
  FieldState out = fields;
  FaceVector total = src.j_plasma.nx ? src.j_plasma : FaceVector(fields.nx);
  if (src.u_ext.nx) total.axpy(1.0, src.u_ext);
  maxwell_step_in_place(out, total, dt, dx);
  return out;
}

double leapfrog_field_energy(const FaceVector& e, const std::vector<double>& b_lagging,
                             const std::vector<double>& b_leading, double dx) {
  return 0.5 * (inner(e, e, dx) + inner_nodes(b_lagging, b_leading, dx));
}

FieldHistory external_field_solve(const PhaseGrid& grid, const ControlModel& model, const ControlTrajectory& u) {
  FieldHistory h;
  FieldState fields(grid.nx);
  h.b_initial_lagging.assign(node_count(grid.nx), 0.0);
  h.states.reserve(grid.nt + 1);
  for (int n = 0; n < grid.nt; ++n) {
    h.states.push_back(fields);
    const auto w = u.at_half_step(n);
    maxwell_step_in_place(fields, model.assemble(w), grid.dt, grid.dx());
  }
  h.states.push_back(fields);
  return h;
}

double divergence_residual(const FieldState& fields, const SpatialScalar& rho, const SpatialScalar& background,
                           const SpatialScalar& div_u_integral, double dx) {
  const SpatialScalar div = divergence(fields.e, dx);
  double acc = 0.0;
  for (std::size_t k = 0; k < div.v.size(); ++k) {
    double r = div.v[k] - rho.v[k];
    if (!background.v.empty()) r += background.v[k];
    if (!div_u_integral.v.empty()) r += div_u_integral.v[k];
    acc += r * r;
  }
  return dx * std::sqrt(acc);
}

}  // namespace vctl
