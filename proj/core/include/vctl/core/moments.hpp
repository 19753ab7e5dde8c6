#pragma once

#include <vector>

#include "vctl/core/distribution.hpp"
#include "vctl/core/field_state.hpp"

namespace vctl {

/// Absolute threshold below which a sample counts as outside the support.
inline constexpr double kSupportEpsilon = 1e-12;

/// Per-momentum-point velocity components and Lorentz factor.
struct MomentumTables {
  std::vector<double> v1;
  std::vector<double> v2;
  std::vector<double> gamma;
};
MomentumTables momentum_tables(const PhaseGrid& grid);

/// rho_f = 4 pi sum_p f dp^2 (midpoint rule over the momentum grid).
SpatialScalar charge_density(const Distribution& f);
/// j_f = 4 pi sum_p v(p) f dp^2.
SpatialVector current_density(const Distribution& f);
/// 4 pi sum_{x,p} sqrt(1 + |p|^2) f dx^2 dp^2.
double kinetic_energy(const Distribution& f);

/// Signed integral dx^2 dp^2 sum f; equals the L1 norm while f stays non-negative.
double mass(const Distribution& f);

enum class Norm { l1, l2, linf };
double lq_norm(const Distribution& f, Norm q);

struct SupportRadii {
  double x = 0.0;
  double p = 0.0;
};
/// Largest |x| and |p| among samples with |f| >= epsilon; (0, 0) for f == 0.
SupportRadii support_radii(const Distribution& f, double epsilon = kSupportEpsilon);

/// L2 norm dx * sqrt(sum v^2) of a cell field.
double l2_norm(const SpatialScalar& s, double dx);

}  // namespace vctl
