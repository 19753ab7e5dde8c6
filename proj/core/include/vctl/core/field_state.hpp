#pragma once

#include <cstddef>
#include <vector>

#include "vctl/core/grid.hpp"
#include "vctl/core/kinematics.hpp"

namespace vctl {

// Staggered layout on the nx x nx cell grid:
//   x1-faces (i, j): i in [0, nx], j in [0, nx), at (x_line(i), x_center(j))
//   x2-faces (i, j): i in [0, nx), j in [0, nx], at (x_center(i), x_line(j))
//   nodes    (i, j): i, j in [0, nx],            at (x_line(i), x_line(j))
// Faces and nodes on the box boundary form the zero-field Dirichlet layer.

inline std::size_t face1_index(int nx, int i, int j) { return static_cast<std::size_t>(i) * nx + j; }
inline std::size_t face2_index(int nx, int i, int j) { return static_cast<std::size_t>(i) * (nx + 1) + j; }
inline std::size_t node_index(int nx, int i, int j) { return static_cast<std::size_t>(i) * (nx + 1) + j; }
inline std::size_t face_count(int nx) { return static_cast<std::size_t>(nx + 1) * nx; }
inline std::size_t node_count(int nx) { return static_cast<std::size_t>(nx + 1) * (nx + 1); }

/// Cell-centred scalar field (charge density, divergence, potentials).
struct SpatialScalar {
  int nx = 0;
  std::vector<double> v;

  SpatialScalar() = default;
  explicit SpatialScalar(int n, double value = 0.0) : nx(n), v(static_cast<std::size_t>(n) * n, value) {}
  double& operator()(int i1, int i2) { return v[static_cast<std::size_t>(i1) * nx + i2]; }
  double operator()(int i1, int i2) const { return v[static_cast<std::size_t>(i1) * nx + i2]; }
};

/// Cell-centred planar vector field (plasma current, force coefficients).
struct SpatialVector {
  SpatialScalar c1;
  SpatialScalar c2;

  SpatialVector() = default;
  explicit SpatialVector(int n) : c1(n), c2(n) {}
  int nx() const { return c1.nx; }
};

/// Planar vector field with components on their normal faces (currents, coils).
struct FaceVector {
  int nx = 0;
  std::vector<double> c1;  // x1-faces
  std::vector<double> c2;  // x2-faces

  FaceVector() = default;
  explicit FaceVector(int n) : nx(n), c1(face_count(n), 0.0), c2(face_count(n), 0.0) {}

  void fill(double v);
  void axpy(double a, const FaceVector& other);
  void scale(double a);
};

/// In-plane electric field on faces and out-of-plane magnetic field on nodes.
///
/// Inside the leapfrog, e holds E at t_n and b holds B at t_{n+1/2}.
struct FieldState {
  int nx = 0;
  FaceVector e;
  std::vector<double> b;

  FieldState() = default;
  explicit FieldState(int n) : nx(n), e(n), b(node_count(n), 0.0) {}

  double& e1(int i, int j) { return e.c1[face1_index(nx, i, j)]; }
  double e1(int i, int j) const { return e.c1[face1_index(nx, i, j)]; }
  double& e2(int i, int j) { return e.c2[face2_index(nx, i, j)]; }
  double e2(int i, int j) const { return e.c2[face2_index(nx, i, j)]; }
  double& bz(int i, int j) { return b[node_index(nx, i, j)]; }
  double bz(int i, int j) const { return b[node_index(nx, i, j)]; }

  void axpy(double a, const FieldState& other);
  void scale(double a);
  /// Largest magnitude among boundary faces and nodes.
  double boundary_max_abs() const;
  /// Largest magnitude of (this - reference) on boundary-adjacent samples.
  double boundary_deviation(const FieldState& reference) const;
};

/// Cell-area weighted inner product dx^2 * sum a_k b_k over faces.
double inner(const FaceVector& a, const FaceVector& b, double dx);
double inner_nodes(const std::vector<double>& a, const std::vector<double>& b, double dx);

/// Cell-centre -> interior-face average with the fourth-order weights
/// (-1, 7, 7, -1) / 12 along the face normal; boundary faces stay zero.
FaceVector deposit_to_faces(const SpatialVector& c);
/// Exact transpose of deposit_to_faces (faces and cells carry the same dx^2 weight).
SpatialVector faces_to_centers(const FaceVector& f);
/// Node -> cell-centre average of the four corners.
SpatialScalar nodes_to_centers(const std::vector<double>& b, int nx);
/// Transpose of nodes_to_centers restricted to interior nodes.
std::vector<double> centers_to_nodes_transpose(const SpatialScalar& c);

/// Bilinear interpolation of the staggered fields at an arbitrary point; zero outside the box.
struct PointField {
  Vec2 e;
  double b = 0.0;
};
PointField interpolate_fields(const FieldState& fields, const PhaseGrid& grid, const Vec2& x);

}  // namespace vctl
