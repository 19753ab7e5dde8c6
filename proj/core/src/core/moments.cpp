#include "vctl/core/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vctl/core/parallel.hpp"

namespace vctl {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Per-cell partial sums followed by a sequential sweep over cells keep the
// result independent of the thread partition.
template <class CellSum>
double reduce_cells(const PhaseGrid& grid, CellSum&& cell_sum) {
  std::vector<double> partial(grid.cells());
  parallel_for(0, grid.cells(), [&](std::size_t c) { partial[c] = cell_sum(c); });
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

}  // namespace

MomentumTables momentum_tables(const PhaseGrid& grid) {
  MomentumTables t;
  t.v1.resize(grid.momenta());
  t.v2.resize(grid.momenta());
  t.gamma.resize(grid.momenta());
  for (int j1 = 0; j1 < grid.np; ++j1)
    for (int j2 = 0; j2 < grid.np; ++j2) {
      const Vec2 p{grid.p_center(j1), grid.p_center(j2)};
      const Vec2 v = relativistic_velocity(p);
      const std::size_t m = grid.momentum(j1, j2);
      t.v1[m] = v.x1;
      t.v2[m] = v.x2;
      t.gamma[m] = lorentz_factor(p);
    }
  return t;
}

SpatialScalar charge_density(const Distribution& f) {
  const PhaseGrid& g = f.grid();
  SpatialScalar rho(g.nx);
  const double w = kFourPi * g.dp() * g.dp();
  parallel_for(0, g.cells(), [&](std::size_t c) {
    double s = 0.0;
    for (double v : f.cell_block(c)) s += v;
    rho.v[c] = w * s;
  });
  return rho;
}

SpatialVector current_density(const Distribution& f) {
  const PhaseGrid& g = f.grid();
  const MomentumTables t = momentum_tables(g);
  SpatialVector j(g.nx);
  const double w = kFourPi * g.dp() * g.dp();
  parallel_for(0, g.cells(), [&](std::size_t c) {
    const auto block = f.cell_block(c);
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t m = 0; m < block.size(); ++m) {
      s1 += t.v1[m] * block[m];
      s2 += t.v2[m] * block[m];
    }
    j.c1.v[c] = w * s1;
    j.c2.v[c] = w * s2;
  });
  return j;
}

double kinetic_energy(const Distribution& f) {
  const PhaseGrid& g = f.grid();
  const MomentumTables t = momentum_tables(g);
  const double s = reduce_cells(g, [&](std::size_t c) {
    const auto block = f.cell_block(c);
    double acc = 0.0;
    for (std::size_t m = 0; m < block.size(); ++m) acc += t.gamma[m] * block[m];
    return acc;
  });
  const double dx = g.dx();
  const double dp = g.dp();
  return kFourPi * s * dx * dx * dp * dp;
}

double mass(const Distribution& f) {
  const PhaseGrid& g = f.grid();
  const double vol = g.dx() * g.dx() * g.dp() * g.dp();
  return vol * reduce_cells(g, [&](std::size_t c) {
           double acc = 0.0;
           for (double v : f.cell_block(c)) acc += v;
           return acc;
         });
}

double lq_norm(const Distribution& f, Norm q) {
  const PhaseGrid& g = f.grid();
  const double vol = g.dx() * g.dx() * g.dp() * g.dp();
  switch (q) {
    case Norm::l1:
      return vol * reduce_cells(g, [&](std::size_t c) {
               double acc = 0.0;
               for (double v : f.cell_block(c)) acc += std::abs(v);
               return acc;
             });
    case Norm::l2:
      return std::sqrt(vol * reduce_cells(g, [&](std::size_t c) {
                         double acc = 0.0;
                         for (double v : f.cell_block(c)) acc += v * v;
                         return acc;
                       }));
    case Norm::linf:
      return f.max_abs();
  }
  return 0.0;
}

SupportRadii support_radii(const Distribution& f, double epsilon) {
  const PhaseGrid& g = f.grid();
  std::vector<char> momentum_hit(g.momenta(), 0);
  SupportRadii r;
  for (int i1 = 0; i1 < g.nx; ++i1)
    for (int i2 = 0; i2 < g.nx; ++i2) {
      const auto block = f.cell_block(g.cell(i1, i2));
      bool any = false;
      for (std::size_t m = 0; m < block.size(); ++m)
        if (std::abs(block[m]) >= epsilon) {
          any = true;
          momentum_hit[m] = 1;
        }
      if (any) r.x = std::max(r.x, norm(Vec2{g.x_center(i1), g.x_center(i2)}));
    }
  for (int j1 = 0; j1 < g.np; ++j1)
    for (int j2 = 0; j2 < g.np; ++j2)
      if (momentum_hit[g.momentum(j1, j2)]) r.p = std::max(r.p, norm(Vec2{g.p_center(j1), g.p_center(j2)}));
  return r;
}

double l2_norm(const SpatialScalar& s, double dx) {
  double acc = 0.0;
  for (double v : s.v) acc += v * v;
  return dx * std::sqrt(acc);
}

}  // namespace vctl
