#include "vctl/forward/energy.hpp"

#include <algorithm>
#include <cmath>

#include "vctl/core/error.hpp"

namespace vctl {
namespace {

std::vector<double> difference(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  return d;
}

}  // namespace

EnergyIdentityReport energy_identity_residual(const ForwardRun& run, const FieldHistory& external) {
  const PhaseGrid& g = run.grid;
  const int nt = g.nt;
  if (external.states.size() != run.fields.states.size())
    throw ConfigError("external field history does not match the forward run");
  const double dx = g.dx();
  EnergyIdentityReport report;
  report.samples.resize(nt + 1);
  for (int n = 0; n <= nt; ++n) {
    const FieldState& full = run.fields.states[n];
    const FieldState& ext = external.states[n];
    FaceVector e_int = full.e;
    e_int.axpy(-1.0, ext.e);
    const auto b_lag = difference(run.fields.b_lagging(n), external.b_lagging(n));
    const auto b_lead = difference(full.b, ext.b);
    EnergyIdentitySample& s = report.samples[n];
    s.step = n;
    s.time = g.time(n);
    s.internal_energy = leapfrog_field_energy(e_int, b_lag, b_lead, dx) + run.diagnostics[n].kinetic_energy;
    s.external_work = inner(ext.e, deposit_to_faces(run.current[n]), dx);
    report.max_abs_work = std::max(report.max_abs_work, std::abs(s.external_work));
  }
  for (int n = 1; n < nt; ++n) {
    EnergyIdentitySample& s = report.samples[n];
    s.residual =
        (report.samples[n + 1].internal_energy - report.samples[n - 1].internal_energy) / (2.0 * g.dt) -
        s.external_work;
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(s.residual));
  }
  return report;
}

double total_energy_drift(const ForwardRun& run) {
  const double e0 = run.diagnostics.front().total_energy;
  double m = 0.0;
  for (const auto& d : run.diagnostics) m = std::max(m, std::abs(d.total_energy - e0));
  return e0 != 0.0 ? m / std::abs(e0) : m;
}

}  // namespace vctl
