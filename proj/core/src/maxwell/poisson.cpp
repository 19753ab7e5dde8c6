#include "vctl/maxwell/poisson.hpp"

#include <cmath>

#include "vctl/core/error.hpp"

namespace vctl {
namespace {

// Negative five-point Laplacian with zero-flux boundaries.
void apply_neg_laplacian(const SpatialScalar& x, SpatialScalar& y, double dx) {
  const int n = x.nx;
  const double inv = 1.0 / (dx * dx);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double c = x(i, j);
      double s = 0.0;
      if (i > 0) s += c - x(i - 1, j);
      if (i + 1 < n) s += c - x(i + 1, j);
      if (j > 0) s += c - x(i, j - 1);
      if (j + 1 < n) s += c - x(i, j + 1);
      y(i, j) = s * inv;
    }
}

double dot(const SpatialScalar& a, const SpatialScalar& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.v.size(); ++k) s += a.v[k] * b.v[k];
  return s;
}

void remove_mean(SpatialScalar& s) {
  double m = 0.0;
  for (double v : s.v) m += v;
  m /= static_cast<double>(s.v.size());
  for (double& v : s.v) v -= m;
}

}  // namespace

PoissonResult solve_poisson_neumann(const SpatialScalar& rhs, double dx, double tolerance, int max_iterations) {
  const int n = rhs.nx;
  PoissonResult out;
  SpatialScalar b = rhs;
  double mean = 0.0;
  for (double v : b.v) mean += v;
  mean /= static_cast<double>(b.v.size());
  for (double& v : b.v) v -= mean;
  out.removed_mean = mean;

  out.phi = SpatialScalar(n);
  SpatialScalar r = b;
  SpatialScalar p = r;
  SpatialScalar ap(n);
  const double bnorm = std::sqrt(dot(b, b));
  double rr = dot(r, r);
  if (bnorm == 0.0) return out;
  int it = 0;
  while (std::sqrt(rr) > tolerance * bnorm) {
    if (it >= max_iterations) throw NumericalError("Poisson solve did not converge");
    apply_neg_laplacian(p, ap, dx);
    const double alpha = rr / dot(p, ap);
    for (std::size_t k = 0; k < p.v.size(); ++k) {
      out.phi.v[k] += alpha * p.v[k];
      r.v[k] -= alpha * ap.v[k];
    }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t k = 0; k < p.v.size(); ++k) p.v[k] = r.v[k] + beta * p.v[k];
    ++it;
  }
  remove_mean(out.phi);
  out.iterations = it;
  out.residual = std::sqrt(rr) / bnorm;
  return out;
}

FaceVector negative_gradient(const SpatialScalar& phi, double dx) {
  const int n = phi.nx;
  FaceVector e(n);
  const double inv = 1.0 / dx;
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      e.c1[face1_index(n, i, j)] = -(phi(i, j) - phi(i - 1, j)) * inv;
      e.c2[face2_index(n, j, i)] = -(phi(j, i) - phi(j, i - 1)) * inv;
    }
  return e;
}

}  // namespace vctl
