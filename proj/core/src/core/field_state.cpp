#include "vctl/core/field_state.hpp"

#include <algorithm>
#include <cmath>

namespace vctl {
namespace {

constexpr double kDeposit[4] = {-1.0 / 12.0, 7.0 / 12.0, 7.0 / 12.0, -1.0 / 12.0};

bool outer_line(int i, int nx) { return i <= 1 || i >= nx - 1; }
bool outer_center(int j, int nx) { return j == 0 || j == nx - 1; }

}  // namespace

void FaceVector::fill(double v) {
  std::fill(c1.begin(), c1.end(), v);
  std::fill(c2.begin(), c2.end(), v);
}

void FaceVector::axpy(double a, const FaceVector& other) {
  for (std::size_t k = 0; k < c1.size(); ++k) c1[k] += a * other.c1[k];
  for (std::size_t k = 0; k < c2.size(); ++k) c2[k] += a * other.c2[k];
}

void FaceVector::scale(double a) {
  for (double& v : c1) v *= a;
  for (double& v : c2) v *= a;
}

void FieldState::axpy(double a, const FieldState& other) {
  e.axpy(a, other.e);
  for (std::size_t k = 0; k < b.size(); ++k) b[k] += a * other.b[k];
}

void FieldState::scale(double a) {
  e.scale(a);
  for (double& v : b) v *= a;
}

double FieldState::boundary_max_abs() const {
  double m = 0.0;
  for (int j = 0; j < nx; ++j) {
    m = std::max({m, std::abs(e1(0, j)), std::abs(e1(nx, j))});
    m = std::max({m, std::abs(e2(j, 0)), std::abs(e2(j, nx))});
  }
  for (int k = 0; k <= nx; ++k)
    m = std::max({m, std::abs(bz(0, k)), std::abs(bz(nx, k)), std::abs(bz(k, 0)), std::abs(bz(k, nx))});
  return m;
}

double FieldState::boundary_deviation(const FieldState& reference) const {
  double m = 0.0;
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j < nx; ++j) {
      if (outer_line(i, nx) || outer_center(j, nx)) m = std::max(m, std::abs(e1(i, j) - reference.e1(i, j)));
      if (outer_center(j, nx) || outer_line(i, nx)) m = std::max(m, std::abs(e2(j, i) - reference.e2(j, i)));
    }
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= nx; ++j)
      if (outer_line(i, nx) || outer_line(j, nx)) m = std::max(m, std::abs(bz(i, j) - reference.bz(i, j)));
  return m;
}

double inner(const FaceVector& a, const FaceVector& b, double dx) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.c1.size(); ++k) s += a.c1[k] * b.c1[k];
  for (std::size_t k = 0; k < a.c2.size(); ++k) s += a.c2[k] * b.c2[k];
  return s * dx * dx;
}

double inner_nodes(const std::vector<double>& a, const std::vector<double>& b, double dx) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * dx * dx;
}

FaceVector deposit_to_faces(const SpatialVector& c) {
  const int nx = c.nx();
  FaceVector out(nx);
  for (int i = 1; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      double s1 = 0.0;
      double s2 = 0.0;
      for (int m = 0; m < 4; ++m) {
        const int k = i - 2 + m;
        if (k < 0 || k >= nx) continue;
        s1 += kDeposit[m] * c.c1(k, j);
        s2 += kDeposit[m] * c.c2(j, k);
      }
      out.c1[face1_index(nx, i, j)] = s1;
      out.c2[face2_index(nx, j, i)] = s2;
    }
  return out;
}

SpatialVector faces_to_centers(const FaceVector& f) {
  const int nx = f.nx;
  SpatialVector out(nx);
  for (int i = 1; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      const double a1 = f.c1[face1_index(nx, i, j)];
      const double a2 = f.c2[face2_index(nx, j, i)];
      for (int m = 0; m < 4; ++m) {
        const int k = i - 2 + m;
        if (k < 0 || k >= nx) continue;
        out.c1(k, j) += kDeposit[m] * a1;
        out.c2(j, k) += kDeposit[m] * a2;
      }
    }
  return out;
}

SpatialScalar nodes_to_centers(const std::vector<double>& b, int nx) {
  SpatialScalar out(nx);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j)
      out(i, j) = 0.25 * (b[node_index(nx, i, j)] + b[node_index(nx, i + 1, j)] + b[node_index(nx, i, j + 1)] +
                          b[node_index(nx, i + 1, j + 1)]);
  return out;
}

std::vector<double> centers_to_nodes_transpose(const SpatialScalar& c) {
  const int nx = c.nx;
  std::vector<double> out(node_count(nx), 0.0);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      const double q = 0.25 * c(i, j);
      out[node_index(nx, i, j)] += q;
      out[node_index(nx, i + 1, j)] += q;
      out[node_index(nx, i, j + 1)] += q;
      out[node_index(nx, i + 1, j + 1)] += q;
    }
  for (int k = 0; k <= nx; ++k) {
    out[node_index(nx, 0, k)] = 0.0;
    out[node_index(nx, nx, k)] = 0.0;
    out[node_index(nx, k, 0)] = 0.0;
    out[node_index(nx, k, nx)] = 0.0;
  }
  return out;
}

namespace {

// Bilinear interpolation on a lattice with rows at r0 + i*h (i < ni) and
// columns at c0 + j*h (j < nj); samples outside the lattice count as zero.
template <class Get>
double bilinear(double r, double c, double r0, double c0, double h, int ni, int nj, Get&& get) {
  const double sr = (r - r0) / h;
  const double sc = (c - c0) / h;
  const int i = static_cast<int>(std::floor(sr));
  const int j = static_cast<int>(std::floor(sc));
  const double a = sr - i;
  const double b = sc - j;
  double out = 0.0;
  for (int di = 0; di < 2; ++di)
    for (int dj = 0; dj < 2; ++dj) {
      const int ii = i + di;
      const int jj = j + dj;
      if (ii < 0 || ii >= ni || jj < 0 || jj >= nj) continue;
      out += (di ? a : 1.0 - a) * (dj ? b : 1.0 - b) * get(ii, jj);
    }
  return out;
}

}  // namespace

PointField interpolate_fields(const FieldState& fields, const PhaseGrid& grid, const Vec2& x) {
  PointField out;
  const double X = grid.x_extent;
  if (std::abs(x.x1) > X || std::abs(x.x2) > X) return out;
  const int nx = fields.nx;
  const double h = 2.0 * X / nx;
  const double line0 = -X;
  const double center0 = -X + 0.5 * h;
  out.e.x1 = bilinear(x.x1, x.x2, line0, center0, h, nx + 1, nx, [&](int i, int j) { return fields.e1(i, j); });
  out.e.x2 = bilinear(x.x1, x.x2, center0, line0, h, nx, nx + 1, [&](int i, int j) { return fields.e2(i, j); });
  out.b = bilinear(x.x1, x.x2, line0, line0, h, nx + 1, nx + 1, [&](int i, int j) { return fields.bz(i, j); });
  return out;
}

}  // namespace vctl
