#pragma once

#include <vector>

#include "vctl/forward/simulation.hpp"
#include "vctl/maxwell/maxwell.hpp"

namespace vctl {

struct EnergyIdentitySample {
  int step = 0;
  double time = 0.0;
  double internal_energy = 0.0;
  /// W^n = integral of E_ext . j_f at t_n.
  double external_work = 0.0;
  /// (e_int^{n+1} - e_int^{n-1}) / (2 dt) - W^n; zero at the end points where it is undefined.
  double residual = 0.0;
};

struct EnergyIdentityReport {
  std::vector<EnergyIdentitySample> samples;
  double max_abs_residual = 0.0;
  double max_abs_work = 0.0;
  double relative() const { return max_abs_work > 0.0 ? max_abs_residual / max_abs_work : max_abs_residual; }
};

/// Internal energy 1/2|E_int|^2 + 1/2 B_int^- B_int^+ + kinetic energy at every level,
/// with E_int = E - E_ext, and its balance against the work of the external field.
EnergyIdentityReport energy_identity_residual(const ForwardRun& run, const FieldHistory& external);

/// Relative drift max_n |e^n - e^0| / |e^0| of the total energy.
double total_energy_drift(const ForwardRun& run);

}  // namespace vctl
