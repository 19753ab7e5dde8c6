#include "vctl/vlasov/transport.hpp"

#include <algorithm>
#include <cmath>

#include "vctl/core/parallel.hpp"
#include "vctl/vlasov/interpolation.hpp"

namespace vctl {

bool CellForces::zero() const {
  auto all_zero = [](const SpatialScalar& s) { return std::all_of(s.v.begin(), s.v.end(), [](double v) { return v == 0.0; }); };
  return all_zero(e1) && all_zero(e2) && all_zero(b);
}

void CellForces::axpy(double a, const CellForces& other) {
  for (std::size_t k = 0; k < e1.v.size(); ++k) {
    e1.v[k] += a * other.e1.v[k];
    e2.v[k] += a * other.e2.v[k];
    b.v[k] += a * other.b.v[k];
  }
}

CellForces cell_forces(const FaceVector& e, const std::vector<double>& b) {
  CellForces k;
  SpatialVector ec = faces_to_centers(e);
  k.e1 = std::move(ec.c1);
  k.e2 = std::move(ec.c2);
  k.b = nodes_to_centers(b, e.nx);
  return k;
}

void cell_forces_transpose(const CellForces& k, FaceVector& e, std::vector<double>& b) {
  SpatialVector ec;
  ec.c1 = k.e1;
  ec.c2 = k.e2;
  e = deposit_to_faces(ec);
  b = centers_to_nodes_transpose(k.b);
}

XShift::XShift(const PhaseGrid& grid, double tau) : grid_(grid), tau_(tau) {
  const MomentumTables t = momentum_tables(grid);
  a1_ = make_axis(t.v1);
  a2_ = make_axis(t.v2);
}

XShift::Axis XShift::make_axis(const std::vector<double>& velocity) const {
  Axis axis;
  const std::size_t nm = velocity.size();
  std::vector<int> offset(nm);
  std::vector<CubicWeights> weights(nm);
  int lo = 0;
  int hi = 0;
  for (std::size_t m = 0; m < nm; ++m) {
    const double foot = -tau_ * velocity[m] / grid_.dx();
    const double fl = std::floor(foot);
    offset[m] = static_cast<int>(fl);
    weights[m] = cubic_weights(foot - fl);
    if (m == 0 || offset[m] - 1 < lo) lo = offset[m] - 1;
    if (m == 0 || offset[m] + 2 > hi) hi = offset[m] + 2;
  }
  axis.kmin = lo;
  axis.kmax = hi;
  axis.w.assign(static_cast<std::size_t>(hi - lo + 1) * nm, 0.0);
  for (std::size_t m = 0; m < nm; ++m)
    for (int t = 0; t < 4; ++t) axis.w[static_cast<std::size_t>(offset[m] - 1 + t - lo) * nm + m] += weights[m].w[t];

  // f(i + k) - f(i) telescopes into face differences; collecting them gives
  // c_l = -sum_{k >= max(l, 1)} w_k for l >= 1 and c_l = sum_{k <= min(l - 1, -1)} w_k for l <= 0.
  axis.lmin = lo + 1;
  axis.lmax = std::max(hi, 0);
  const int nl = axis.lmax - axis.lmin + 1;
  axis.c.assign(static_cast<std::size_t>(nl) * nm, 0.0);
  for (std::size_t m = 0; m < nm; ++m)
    for (int l = axis.lmin; l <= axis.lmax; ++l) {
      double c = 0.0;
      for (int k = lo; k <= hi; ++k) {
        const double wk = axis.w[static_cast<std::size_t>(k - lo) * nm + m];
        if (l >= 1 && k >= l) c -= wk;
        if (l <= 0 && k <= l - 1) c += wk;
      }
      axis.c[static_cast<std::size_t>(l - axis.lmin) * nm + m] = c;
    }
  return axis;
}

void XShift::add_flux(const Axis& axis, int dim, const Distribution& in, double scale, FaceVector& flux) const {
  const int nx = grid_.nx;
  const std::size_t nm = grid_.momenta();
  // interior face between cells i and i + 1 along `dim`, i = 0..nx-2
  parallel_for(0, grid_.cells(), [&](std::size_t c) {
    const int i1 = static_cast<int>(c) / nx;
    const int i2 = static_cast<int>(c) % nx;
    const int i = dim == 1 ? i1 : i2;
    if (i >= nx - 1) return;
    double acc = 0.0;
    for (int l = axis.lmin; l <= axis.lmax; ++l) {
      const int s = i + l;
      if (s < 0 || s >= nx) continue;
      const double* src = in.values().data() + (dim == 1 ? grid_.cell(s, i2) : grid_.cell(i1, s)) * nm;
      const double* w = axis.c.data() + static_cast<std::size_t>(l - axis.lmin) * nm;
      for (std::size_t m = 0; m < nm; ++m) acc += w[m] * src[m];
    }
    if (dim == 1)
      flux.c1[face1_index(nx, i1 + 1, i2)] += scale * acc;
    else
      flux.c2[face2_index(nx, i1, i2 + 1)] += scale * acc;
  });
}

void XShift::add_flux_transpose(const Axis& axis, int dim, const FaceVector& cot, double scale,
                                Distribution& out) const {
  const int nx = grid_.nx;
  const std::size_t nm = grid_.momenta();
  parallel_for(0, grid_.cells(), [&](std::size_t c) {
    const int i1 = static_cast<int>(c) / nx;
    const int i2 = static_cast<int>(c) % nx;
    const int s = dim == 1 ? i1 : i2;
    double* dst = out.values().data() + c * nm;
    for (int l = axis.lmin; l <= axis.lmax; ++l) {
      const int i = s - l;
      if (i < 0 || i >= nx - 1) continue;
      const double a = scale * (dim == 1 ? cot.c1[face1_index(nx, i + 1, i2)] : cot.c2[face2_index(nx, i1, i + 1)]);
      if (a == 0.0) continue;
      const double* w = axis.c.data() + static_cast<std::size_t>(l - axis.lmin) * nm;
      for (std::size_t m = 0; m < nm; ++m) dst[m] += a * w[m];
    }
  });
}

void XShift::shift(const Axis& axis, int dim, int sign, const Distribution& in, Distribution& out) const {
  const int nx = grid_.nx;
  const std::size_t nm = grid_.momenta();
  parallel_for(0, grid_.cells(), [&](std::size_t c) {
    const int i1 = static_cast<int>(c) / nx;
    const int i2 = static_cast<int>(c) % nx;
    double* dst = out.values().data() + c * nm;
    std::fill(dst, dst + nm, 0.0);
    for (int k = axis.kmin; k <= axis.kmax; ++k) {
      int s1 = i1;
      int s2 = i2;
      if (dim == 1)
        s1 += sign * k;
      else
        s2 += sign * k;
      if (s1 < 0 || s1 >= nx || s2 < 0 || s2 >= nx) continue;
      const double* src = in.values().data() + grid_.cell(s1, s2) * nm;
      const double* w = axis.w.data() + static_cast<std::size_t>(k - axis.kmin) * nm;
      for (std::size_t m = 0; m < nm; ++m) dst[m] += w[m] * src[m];
    }
  });
}

void XShift::apply(const Distribution& in, Distribution& out, Distribution& scratch) const {
  if (scratch.size() != in.size()) scratch = Distribution(grid_);
  if (out.size() != in.size()) out = Distribution(grid_);
  shift(a1_, 1, +1, in, scratch);
  shift(a2_, 2, +1, scratch, out);
}

void XShift::apply_transpose(const Distribution& in, Distribution& out, Distribution& scratch) const {
  if (scratch.size() != in.size()) scratch = Distribution(grid_);
  if (out.size() != in.size()) out = Distribution(grid_);
  shift(a2_, 2, -1, in, scratch);
  shift(a1_, 1, -1, scratch, out);
}

void XShift::apply(const Distribution& in, Distribution& out, Distribution& scratch, double scale,
                   FaceVector& flux) const {
  apply(in, out, scratch);
  add_flux(a1_, 1, in, scale, flux);
  add_flux(a2_, 2, scratch, scale, flux);
}

void XShift::apply_transpose(const Distribution& in, const FaceVector& flux_cotangent, double scale,
                             Distribution& out, Distribution& scratch) const {
  if (scratch.size() != in.size()) scratch = Distribution(grid_);
  if (out.size() != in.size()) out = Distribution(grid_);
  shift(a2_, 2, -1, in, scratch);
  add_flux_transpose(a2_, 2, flux_cotangent, scale, scratch);
  shift(a1_, 1, -1, scratch, out);
  add_flux_transpose(a1_, 1, flux_cotangent, scale, out);
}

namespace {

struct Foot {
  int base1;
  int base2;
  double a1;  // fractional offsets, kept for derivative weights
  double a2;
  CubicWeights w1;
  CubicWeights w2;
  double m[2][3];  // d foot / d (E1, E2, B)
};

struct Kernel {
  const PhaseGrid& g;
  const MomentumTables& t;
  double dt;
  double e1;
  double e2;
  double b;

  // Traces the foot of momentum point (j1, j2) backwards over dt.
  template <bool Jacobian>
  void foot(int j1, int j2, Foot& ft) const {
    const std::size_t k = g.momentum(j1, j2);
    const double p1 = g.p_center(j1);
    const double p2 = g.p_center(j2);
    const double v1 = t.v1[k];
    const double v2 = t.v2[k];
    const double pm1 = p1 - 0.5 * dt * (e1 + v2 * b);
    const double pm2 = p2 - 0.5 * dt * (e2 - v1 * b);
    const double gm = std::sqrt(1.0 + pm1 * pm1 + pm2 * pm2);
    const double vm1 = pm1 / gm;
    const double vm2 = pm2 / gm;
    const double f1 = p1 - dt * (e1 + vm2 * b);
    const double f2 = p2 - dt * (e2 - vm1 * b);
    const double inv_dp = 1.0 / g.dp();
    const double s1 = (f1 + g.p_extent) * inv_dp - 0.5;
    const double s2 = (f2 + g.p_extent) * inv_dp - 0.5;
    const double fl1 = std::floor(s1);
    const double fl2 = std::floor(s2);
    ft.base1 = static_cast<int>(fl1) - 1;
    ft.base2 = static_cast<int>(fl2) - 1;
    ft.a1 = s1 - fl1;
    ft.a2 = s2 - fl2;
    ft.w1 = cubic_weights(ft.a1);
    ft.w2 = cubic_weights(ft.a2);
    if constexpr (Jacobian) {
      // dv_i/dq_k at p_mid
      const double d11 = (1.0 - vm1 * vm1) / gm;
      const double d12 = -vm1 * vm2 / gm;
      const double d22 = (1.0 - vm2 * vm2) / gm;
      // J = B [[dv2/dq1, dv2/dq2], [-dv1/dq1, -dv1/dq2]]
      const double j11 = b * d12;
      const double j12 = b * d22;
      const double j21 = -b * d11;
      const double j22 = -b * d12;
      // A(p) = [[1, 0, v2], [0, 1, -v1]]
      const double ja[2][3] = {{j11, j12, j11 * v2 - j12 * v1}, {j21, j22, j21 * v2 - j22 * v1}};
      const double am[2][3] = {{1.0, 0.0, vm2}, {0.0, 1.0, -vm1}};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c) ft.m[r][c] = -dt * (am[r][c] - 0.5 * dt * ja[r][c]);
    }
  }

  bool inside(const Foot& ft) const { return ft.base1 >= 0 && ft.base1 + 3 < g.np && ft.base2 >= 0 && ft.base2 + 3 < g.np; }

  double gather(const double* f, const Foot& ft) const {
    const int np = g.np;
    double s = 0.0;
    if (inside(ft)) {
      for (int a = 0; a < 4; ++a) {
        const double* row = f + static_cast<std::size_t>(ft.base1 + a) * np + ft.base2;
        s += ft.w1.w[a] * (ft.w2.w[0] * row[0] + ft.w2.w[1] * row[1] + ft.w2.w[2] * row[2] + ft.w2.w[3] * row[3]);
      }
      return s;
    }
    for (int a = 0; a < 4; ++a) {
      const int r = ft.base1 + a;
      if (r < 0 || r >= np) continue;
      for (int c = 0; c < 4; ++c) {
        const int q = ft.base2 + c;
        if (q < 0 || q >= np) continue;
        s += ft.w1.w[a] * ft.w2.w[c] * f[static_cast<std::size_t>(r) * np + q];
      }
    }
    return s;
  }

  // Interpolated df at the foot plus the sensitivity of the interpolated f to (E1, E2, B).
  double gather_linearised(const double* f, const double* df, const Foot& ft, double coeff[3]) const {
    const int np = g.np;
    const CubicWeights d1 = cubic_weight_derivatives(ft.a1);
    const CubicWeights d2 = cubic_weight_derivatives(ft.a2);
    double s = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    for (int a = 0; a < 4; ++a) {
      const int r = ft.base1 + a;
      if (r < 0 || r >= np) continue;
      double row_w = 0.0;
      double row_d = 0.0;
      double row_s = 0.0;
      for (int c = 0; c < 4; ++c) {
        const int q = ft.base2 + c;
        if (q < 0 || q >= np) continue;
        const std::size_t idx = static_cast<std::size_t>(r) * np + q;
        const double v = f[idx];
        row_w += ft.w2.w[c] * v;
        row_d += d2.w[c] * v;
        if (df) row_s += ft.w2.w[c] * df[idx];
      }
      s += ft.w1.w[a] * row_s;
      g1 += d1.w[a] * row_w;
      g2 += ft.w1.w[a] * row_d;
    }
    const double inv_dp = 1.0 / g.dp();
    g1 *= inv_dp;
    g2 *= inv_dp;
    for (int c = 0; c < 3; ++c) coeff[c] = g1 * ft.m[0][c] + g2 * ft.m[1][c];
    return s;
  }

  void scatter(double* f, const Foot& ft, double value) const {
    const int np = g.np;
    for (int a = 0; a < 4; ++a) {
      const int r = ft.base1 + a;
      if (r < 0 || r >= np) continue;
      const double wa = ft.w1.w[a] * value;
      for (int c = 0; c < 4; ++c) {
        const int q = ft.base2 + c;
        if (q < 0 || q >= np) continue;
        f[static_cast<std::size_t>(r) * np + q] += wa * ft.w2.w[c];
      }
    }
  }
};

}  // namespace

MomentumStep::MomentumStep(const PhaseGrid& grid) : grid_(grid), tables_(momentum_tables(grid)) {}

void MomentumStep::apply(const Distribution& in, const CellForces& k, double dt, Distribution& out) const {
  if (out.size() != in.size()) out = Distribution(grid_);
  const std::size_t nm = grid_.momenta();
  const int np = grid_.np;
  parallel_for(0, grid_.cells(), [&](std::size_t c) {
    const double* src = in.values().data() + c * nm;
    double* dst = out.values().data() + c * nm;
    const Kernel kernel{grid_, tables_, dt, k.e1.v[c], k.e2.v[c], k.b.v[c]};
    if (kernel.e1 == 0.0 && kernel.e2 == 0.0 && kernel.b == 0.0) {
      std::copy(src, src + nm, dst);
      return;
    }
    Foot ft;
    for (int j1 = 0; j1 < np; ++j1)
      for (int j2 = 0; j2 < np; ++j2) {
        kernel.foot<false>(j1, j2, ft);
        dst[grid_.momentum(j1, j2)] = kernel.gather(src, ft);
      }
  });
}

void MomentumStep::apply_tangent(const Distribution& f, const Distribution& df, const CellForces& k,
                                 const CellForces& dk, double dt, Distribution& out) const {
  if (out.size() != f.size()) out = Distribution(grid_);
  const std::size_t nm = grid_.momenta();
  const int np = grid_.np;
  parallel_for(0, grid_.cells(), [&](std::size_t c) {
    const double* fb = f.values().data() + c * nm;
    const double* dfb = df.values().data() + c * nm;
    double* dst = out.values().data() + c * nm;
    const double dk3[3] = {dk.e1.v[c], dk.e2.v[c], dk.b.v[c]};
    const Kernel kernel{grid_, tables_, dt, k.e1.v[c], k.e2.v[c], k.b.v[c]};
    Foot ft;
    for (int j1 = 0; j1 < np; ++j1)
      for (int j2 = 0; j2 < np; ++j2) {
        kernel.foot<true>(j1, j2, ft);
        double coeff[3];
        const double s = kernel.gather_linearised(fb, dfb, ft, coeff);
        dst[grid_.momentum(j1, j2)] = s + coeff[0] * dk3[0] + coeff[1] * dk3[1] + coeff[2] * dk3[2];
      }
  });
}

void MomentumStep::apply_adjoint(const Distribution& f, const Distribution& a_out, const CellForces& k, double dt,
                                 Distribution& a_in, CellForces& a_k) const {
  if (a_in.size() != f.size()) a_in = Distribution(grid_);
  if (a_k.nx() != grid_.nx) a_k = CellForces(grid_.nx);
  const std::size_t nm = grid_.momenta();
  const int np = grid_.np;
  parallel_for(0, grid_.cells(), [&](std::size_t c) {
    const double* fb = f.values().data() + c * nm;
    const double* ab = a_out.values().data() + c * nm;
    double* dst = a_in.values().data() + c * nm;
    std::fill(dst, dst + nm, 0.0);
    const Kernel kernel{grid_, tables_, dt, k.e1.v[c], k.e2.v[c], k.b.v[c]};
    double acc[3] = {0.0, 0.0, 0.0};
    Foot ft;
    for (int j1 = 0; j1 < np; ++j1)
      for (int j2 = 0; j2 < np; ++j2) {
        const double a = ab[grid_.momentum(j1, j2)];
        if (a == 0.0) continue;
        kernel.foot<true>(j1, j2, ft);
        kernel.scatter(dst, ft, a);
        double coeff[3];
        kernel.gather_linearised(fb, nullptr, ft, coeff);
        for (int q = 0; q < 3; ++q) acc[q] += a * coeff[q];
      }
    a_k.e1.v[c] = acc[0];
    a_k.e2.v[c] = acc[1];
    a_k.b.v[c] = acc[2];
  });
}

Distribution transport_step(const Distribution& f, const FieldState& fields, double dt) {
  const PhaseGrid& g = f.grid();
  const XShift half(g, 0.5 * dt);
  const MomentumStep pstep(g);
  Distribution a(g);
  Distribution b(g);
  Distribution scratch(g);
  half.apply(f, a, scratch);
  pstep.apply(a, cell_forces(fields.e, fields.b), dt, b);
  half.apply(b, a, scratch);
  return a;
}

double momentum_boundary_mass(const Distribution& f, int layers) {
  const PhaseGrid& g = f.grid();
  const int np = g.np;
  std::vector<double> partial(g.cells(), 0.0);
  parallel_for(0, g.cells(), [&](std::size_t c) {
    const auto block = f.cell_block(c);
    double s = 0.0;
    for (int j1 = 0; j1 < np; ++j1)
      for (int j2 = 0; j2 < np; ++j2) {
        const bool outer = j1 < layers || j1 >= np - layers || j2 < layers || j2 >= np - layers;
        if (outer) s += std::abs(block[g.momentum(j1, j2)]);
      }
    partial[c] = s;
  });
  double s = 0.0;
  for (double v : partial) s += v;
  return s * g.dx() * g.dx() * g.dp() * g.dp();
}

}  // namespace vctl
