#include "vctl/cli/suites.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>

#include "vctl/cli/csv.hpp"
#include "vctl/cli/gradcheck.hpp"
#include "vctl/cli/scenario.hpp"
#include "vctl/core/error.hpp"
#include "vctl/core/moments.hpp"
#include "vctl/core/parallel.hpp"
#include "vctl/core/profiles.hpp"
#include "vctl/forward/energy.hpp"
#include "vctl/maxwell/maxwell.hpp"
#include "vctl/maxwell/wave_oracle.hpp"
#include "vctl/optimize/optimizer.hpp"
#include "vctl/sensitivity/reduced_problem.hpp"
#include "vctl/vlasov/transport.hpp"

namespace vctl::cli {

bool SuiteResult::passed() const {
  for (const Check& c : checks)
    if (!c.pass()) return false;
  for (const Check& c : runtime)
    if (!c.pass()) return false;
  return !checks.empty();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"free-streaming", "maxwell-oracle", "conservation",
                                              "energy-identity", "gradient",      "regularization",
                                              "optimizer",       "support",       "determinism"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt_short(double v) { return fmt::format("{:.4g}", v); }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void say(const SuiteContext& ctx, const std::string& s) {
  if (ctx.log) ctx.log(s);
}

std::filesystem::path suite_dir(const SuiteContext& ctx, const std::string& name) {
  const std::filesystem::path dir = ctx.out / name;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void write_checks(const std::filesystem::path& dir, const std::vector<Check>& checks) {
  CsvWriter w(dir / "checks.csv", {"check", "value", "threshold", "upper_bound", "pass"});
  for (const Check& c : checks) w.row(c.name, {c.value, c.threshold, c.upper ? 1.0 : 0.0, c.pass() ? 1.0 : 0.0});
}

SupportTrace trace_of(const std::string& name, const ForwardRun& run) {
  return {name, run.grid.dx(), run.grid.dp(), true, run.diagnostics};
}

double ratio(double coarse, double fine) { return fine > 0.0 ? coarse / fine : (coarse > 0.0 ? 1e300 : 0.0); }

/// Twin-experiment scenario with its defaults at the given resolution.
RunConfig twin_config(int nx, int np, int nt) {
  RunConfig c;
  c.grid.nx = nx;
  c.grid.np = np;
  c.grid.nt = nt;
  return c;
}

// ---------------------------------------------------------------- criterion 1

struct StreamingRun {
  double error = 0.0;
  SupportTrace trace;
};

StreamingRun free_streaming_run(int n) {
  PhaseGrid g{4.0, 3.0, n, n, 1.0 / 16.0, 16};
  BlobProfile blob;
  blob.center = {0.2, -0.1};
  blob.drift = {0.5, 0.25};
  blob.sigma_x = 0.6;
  blob.sigma_p = 0.5;
  blob.radius_x = 1.8;
  blob.radius_p = 1.5;
  Distribution f = sample_distribution(g, blob);
  Distribution next(g), scratch(g);
  const XShift half(g, 0.5 * g.dt);

  StreamingRun out;
  out.trace = {"free-streaming nx=" + std::to_string(n), g.dx(), g.dp(), true, {}};
  const auto record = [&](int step) {
    DiagnosticRecord d;
    d.step = step;
    d.time = g.time(step);
    d.mass = mass(f);
    const SupportRadii r = support_radii(f);
    d.support_x = r.x;
    d.support_p = r.p;
    out.trace.records.push_back(d);
  };
  record(0);
  for (int s = 0; s < g.nt; ++s) {
    half.apply(f, next, scratch);
    half.apply(next, f, scratch);
    record(s + 1);
  }
  const double T = g.final_time();
  const Distribution exact = sample_distribution(
      g, [&](const Vec2& x, const Vec2& p) { return blob(x - T * relativistic_velocity(p), p); });
  double num = 0.0, den = 0.0;
  const auto fv = f.values();
  const auto ev = exact.values();
  for (std::size_t k = 0; k < fv.size(); ++k) {
    num += (fv[k] - ev[k]) * (fv[k] - ev[k]);
    den += ev[k] * ev[k];
  }
  out.error = std::sqrt(num / den);
  return out;
}

SuiteResult suite_free_streaming(SuiteContext& ctx) {
  SuiteResult r;
  const auto dir = suite_dir(ctx, "free-streaming");
  const auto t0 = Clock::now();
  StreamingRun coarse = free_streaming_run(32);
  say(ctx, "free-streaming nx=np=32 error " + format_number(coarse.error));
  StreamingRun fine = free_streaming_run(64);
  say(ctx, "free-streaming nx=np=64 error " + format_number(fine.error));
  const double elapsed = seconds_since(t0);
  {
    CsvWriter w(dir / "errors.csv", {"nx", "np", "dt", "steps", "rel_l2_error"});
    w.row({32, 32, 1.0 / 16.0, 16, coarse.error});
    w.row({64, 64, 1.0 / 16.0, 16, fine.error});
  }
  r.checks = {{"rel_l2_error_64", fine.error, 1e-2, true},
              {"error_ratio_32_over_64", ratio(coarse.error, fine.error), 6.0, false}};
  r.runtime = {{"runtime_s", elapsed, 120.0, true}};
  ctx.traces.push_back(std::move(coarse.trace));
  ctx.traces.push_back(std::move(fine.trace));
  write_checks(dir, r.checks);
  return r;
}

// ---------------------------------------------------------------- criterion 2

constexpr double kOracleExtent = 4.0;
constexpr double kOracleSigma = 0.3;
constexpr double kOracleTime = 1.0;

double oracle_amplitude(double t) {
  const double s = std::sin(std::numbers::pi * t);
  return s * s;
}

double oracle_profile(const Vec2& x) { return std::exp(-dot(x, x) / (2.0 * kOracleSigma * kOracleSigma)); }

std::vector<Vec2> oracle_probes() {
  std::vector<Vec2> p;
  for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (double b : {-1.0, -0.5, 0.0, 0.5, 1.0}) p.push_back({a, b});
  return p;
}

struct MaxwellRun {
  std::vector<double> probes;
  SupportTrace trace;
  double seconds = 0.0;
};

/// Leapfrog driven by J = (0, a(t) G(x)) from rest; B(T) is the mean of B^{nt-1/2} and B^{nt+1/2}.
MaxwellRun maxwell_oracle_run(int n, int nt) {
  const auto t0 = Clock::now();
  PhaseGrid g{kOracleExtent, 1.0, n, 2, kOracleTime / nt, nt};
  const double dx = g.dx();
  FieldState fields(n);
  const FieldState zero(n);
  FaceVector current(n);
  std::vector<double> shape(face_count(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 1; j < n; ++j) shape[face2_index(n, i, j)] = oracle_profile({g.x_center(i), g.x_line(j)});

  MaxwellRun out;
  out.trace = {"maxwell-oracle nx=" + std::to_string(n), dx, 0.0, false, {}};
  const auto record = [&](int step) {
    DiagnosticRecord d;
    d.step = step;
    d.time = g.time(step);
    d.boundary_field = fields.boundary_deviation(zero);
    out.trace.records.push_back(d);
  };
  record(0);
  std::vector<double> b_prev;
  for (int s = 0; s < nt; ++s) {
    const double a = oracle_amplitude(g.time(s) + 0.5 * g.dt);
    for (std::size_t k = 0; k < shape.size(); ++k) current.c2[k] = a * shape[k];
    b_prev = fields.b;
    maxwell_step_in_place(fields, current, g.dt, dx);
    record(s + 1);
  }
  for (const Vec2& p : oracle_probes()) {
    const int i = static_cast<int>(std::lround((p.x1 + g.x_extent) / dx));
    const int j = static_cast<int>(std::lround((p.x2 + g.x_extent) / dx));
    const std::size_t k = node_index(n, i, j);
    out.probes.push_back(0.5 * (b_prev[k] + fields.b[k]));
  }
  out.seconds = seconds_since(t0);
  return out;
}

double probe_error(const std::vector<double>& num, const std::vector<double>& ref) {
  double e = 0.0, r = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    e += (num[k] - ref[k]) * (num[k] - ref[k]);
    r += ref[k] * ref[k];
  }
  return std::sqrt(e / r);
}

SuiteResult suite_maxwell_oracle(SuiteContext& ctx) {
  SuiteResult r;
  const auto dir = suite_dir(ctx, "maxwell-oracle");
  // d1 J2 - d2 J1 with J = (0, a(t) G(x)).
  const SpaceTimeFunction source = [](double t, const Vec2& x) {
    return oracle_amplitude(t) * (-x.x1 / (kOracleSigma * kOracleSigma)) * oracle_profile(x);
  };
  WaveOracleOptions opt;
  opt.radial_nodes = 128;
  opt.angular_nodes = 128;
  opt.time_nodes = 512;
  std::vector<double> reference;
  for (const Vec2& p : oracle_probes()) reference.push_back(wave_oracle(source, {}, {}, kOracleTime, p, opt));
  say(ctx, "maxwell-oracle reference computed");

  MaxwellRun coarse = maxwell_oracle_run(64, 32);
  MaxwellRun fine = maxwell_oracle_run(128, 64);
  const double e64 = probe_error(coarse.probes, reference);
  const double e128 = probe_error(fine.probes, reference);
  say(ctx, "maxwell-oracle errors " + format_number(e64) + " (64) " + format_number(e128) + " (128)");
  {
    CsvWriter w(dir / "probes.csv", {"x1", "x2", "oracle", "b_64", "b_128"});
    const auto probes = oracle_probes();
    for (std::size_t k = 0; k < probes.size(); ++k)
      w.row({probes[k].x1, probes[k].x2, reference[k], coarse.probes[k], fine.probes[k]});
  }
  {
    CsvWriter w(dir / "errors.csv", {"nx", "nt", "rel_error"});
    w.row({64, 32, e64});
    w.row({128, 64, e128});
  }
  r.checks = {{"rel_error_128", e128, 0.05, true}, {"error_ratio_64_over_128", ratio(e64, e128), 4.0, false}};
  r.runtime = {{"runtime_64_s", coarse.seconds, 60.0, true}, {"runtime_128_s", fine.seconds, 60.0, true}};
  ctx.traces.push_back(std::move(coarse.trace));
  ctx.traces.push_back(std::move(fine.trace));
  write_checks(dir, r.checks);
  return r;
}

// ---------------------------------------------------------------- criterion 3

RunConfig conservation_config(int nx, int np, int nt) {
  RunConfig c = twin_config(nx, np, nt);
  c.grid.p_extent = 2.5;
  c.initial.profile = "two-bump";
  c.initial.separation = 1.6;
  c.initial.blob.amplitude = 0.3;
  c.initial.blob.drift = {-0.3, 0.0};
  c.initial.blob.sigma_x = 0.4;
  c.initial.blob.sigma_p = 0.5;
  c.initial.blob.radius_x = 1.0;
  c.coils.preset = "none";
  c.control.source = "zeros";
  c.objective.target = "zero";
  return c;
}

struct ConservationRun {
  double mass_drift = 0.0;
  double gauss = 0.0;
  double energy_drift = 0.0;
};

ConservationRun conservation_run(SuiteContext& ctx, const std::filesystem::path& dir, int nx, int np, int nt) {
  const Scenario s = build_scenario(conservation_config(nx, np, nt));
  ForwardOptions opt = s.options;
  opt.store_snapshots = false;
  const ForwardRun run = run_forward(s.init, s.model, s.control, opt);
  write_diagnostics_csv(dir / ("diagnostics_" + std::to_string(nx) + ".csv"), run.diagnostics);
  ConservationRun c;
  const double m0 = run.diagnostics.front().mass;
  for (const DiagnosticRecord& d : run.diagnostics) {
    c.mass_drift = std::max(c.mass_drift, std::abs(d.mass - m0) / std::abs(m0));
    if (d.charge_norm > 0.0) c.gauss = std::max(c.gauss, d.gauss_residual / d.charge_norm);
  }
  c.energy_drift = total_energy_drift(run);
  ctx.traces.push_back(trace_of("conservation nx=" + std::to_string(nx), run));
  say(ctx, "conservation nx=" + std::to_string(nx) + " mass " + format_number(c.mass_drift) + " gauss " +
               format_number(c.gauss) + " energy " + format_number(c.energy_drift));
  return c;
}

SuiteResult suite_conservation(SuiteContext& ctx) {
  SuiteResult r;
  const auto dir = suite_dir(ctx, "conservation");
  const ConservationRun coarse = conservation_run(ctx, dir, 32, 32, 128);
  const ConservationRun fine = conservation_run(ctx, dir, 64, 64, 256);
  {
    CsvWriter w(dir / "drifts.csv", {"nx", "np", "nt", "mass_drift", "gauss_relative", "energy_drift"});
    w.row({32, 32, 128, coarse.mass_drift, coarse.gauss, coarse.energy_drift});
    w.row({64, 64, 256, fine.mass_drift, fine.gauss, fine.energy_drift});
  }
  r.checks = {{"l1_drift", coarse.mass_drift, 1e-3, true},
              {"gauss_residual_relative", coarse.gauss, 1e-2, true},
              {"gauss_ratio_32_over_64", ratio(coarse.gauss, fine.gauss), 4.0, false},
              {"energy_drift", coarse.energy_drift, 1e-3, true}};
  write_checks(dir, r.checks);
  return r;
}

// ---------------------------------------------------------------- criterion 4

/// Weak blob drifting along a straight coil, so the external work is large next to
/// the self-field exchange of the plasma.
RunConfig energy_config(int nx, int np, int nt) {
  RunConfig c = twin_config(nx, np, nt);
  c.grid.p_extent = 2.5;
  c.initial.blob.amplitude = 0.1;
  c.initial.blob.drift = {0.3, 0.0};
  c.initial.blob.sigma_p = 0.5;
  CoilSpec bar;
  bar.shape = CoilShape::straight;
  bar.radius = 1.2;
  bar.amplitude = 1.0;
  c.coils.preset = "list";
  c.coils.list = {bar};
  c.control.source = "waveform";
  c.control.waveform = {{0.8}, {1.0}, {0.0}};
  c.objective.target = "zero";
  return c;
}

double energy_run(SuiteContext& ctx, const std::filesystem::path& dir, int nx, int np, int nt) {
  const Scenario s = build_scenario(energy_config(nx, np, nt));
  ForwardOptions opt = s.options;
  opt.store_snapshots = false;
  const ForwardRun run = run_forward(s.init, s.model, s.control, opt);
  const FieldHistory ext = external_field_solve(s.grid, s.model, s.control);
  const EnergyIdentityReport rep = energy_identity_residual(run, ext);
  CsvWriter w(dir / ("identity_" + std::to_string(nx) + ".csv"),
              {"step", "time", "internal_energy", "external_work", "residual"});
  for (const EnergyIdentitySample& e : rep.samples)
    w.row({static_cast<double>(e.step), e.time, e.internal_energy, e.external_work, e.residual});
  ctx.traces.push_back(trace_of("energy-identity nx=" + std::to_string(nx), run));
  say(ctx, "energy-identity nx=" + std::to_string(nx) + " relative residual " + format_number(rep.relative()));
  return rep.relative();
}

SuiteResult suite_energy_identity(SuiteContext& ctx) {
  SuiteResult r;
  const auto dir = suite_dir(ctx, "energy-identity");
  const double coarse = energy_run(ctx, dir, 32, 32, 128);
  const double fine = energy_run(ctx, dir, 64, 64, 256);
  {
    CsvWriter w(dir / "residuals.csv", {"nx", "np", "nt", "relative_residual"});
    w.row({32, 32, 128, coarse});
    w.row({64, 64, 256, fine});
  }
  r.checks = {{"relative_residual", coarse, 0.02, true}, {"residual_ratio_32_over_64", ratio(coarse, fine), 4.0, false}};
  write_checks(dir, r.checks);
  return r;
}

// ---------------------------------------------------------------- criteria 5 and 6

ReducedProblem make_problem(const Scenario& s) {
  return ReducedProblem(s.init, s.model, make_target(s), s.weights, s.options);
}

SuiteResult suite_gradient(SuiteContext& ctx) {
  SuiteResult r;
  const auto dir = suite_dir(ctx, "gradient");
  const auto t0 = Clock::now();
  const RunConfig c = twin_config(32, 32, 128);
  const Scenario s = build_scenario(c);
  ReducedProblem problem = make_problem(s);
  ControlTrajectory u = waveform_control(c.objective.twin, s.grid);
  u.scale(c.gradcheck.base_scale);
  const GradcheckReport rep = gradient_check(problem, u, c.gradcheck, ctx.log);
  write_gradcheck_csv(dir / "gradcheck.csv", rep);
  ctx.traces.push_back(trace_of("gradient base", rep.base));
  const double elapsed = seconds_since(t0);
  r.checks = {{"max_plateau_rel_err", *std::max_element(rep.plateau_rel_err.begin(), rep.plateau_rel_err.end()), 0.02,
               true},
              {"max_duality_gap", *std::max_element(rep.duality_gap.begin(), rep.duality_gap.end()), 0.01, true}};
  r.runtime = {{"runtime_s", elapsed, 600.0, true}};
  write_checks(dir, r.checks);
  return r;
}

SuiteResult suite_regularization(SuiteContext& ctx) {
  SuiteResult r;
  const auto dir = suite_dir(ctx, "regularization");
  RunConfig c = twin_config(16, 16, 32);
  c.initial.profile = "zero";
  c.objective.tracking = false;
  c.objective.target = "zero";
  c.gradcheck.epsilons = {1e-2};
  const Scenario s = build_scenario(c);
  ReducedProblem problem = make_problem(s);
  ControlTrajectory u = waveform_control(c.objective.twin, s.grid);
  u.scale(c.gradcheck.base_scale);
  const GradcheckReport rep = gradient_check(problem, u, c.gradcheck, ctx.log);
  write_gradcheck_csv(dir / "gradcheck.csv", rep);
  ctx.traces.push_back(trace_of("regularization base", rep.base));
  double worst = 0.0;
  for (const GradcheckRow& row : rep.rows) worst = std::max(worst, row.rel_err);
  r.checks = {{"max_rel_err", worst, 1e-9, true}};
  write_checks(dir, r.checks);
  return r;
}

// ---------------------------------------------------------------- criterion 7

SuiteResult suite_optimizer(SuiteContext& ctx) {
  SuiteResult r;
  const auto dir = suite_dir(ctx, "optimizer");
  const RunConfig c = twin_config(24, 24, 48);
  const Scenario s = build_scenario(c);
  ReducedProblem problem = make_problem(s);
  const OptimizeResult res = minimize(problem, ControlTrajectory(s.model.coils(), s.grid.nt + 1), c.optimizer,
                                      [&](const IterationRecord& it) {
                                        say(ctx, "optimizer iter " + std::to_string(it.iter) + " objective " +
                                                     format_number(it.objective));
                                      });
  write_history_csv(dir / "history.csv", res.history);
  write_control_csv(dir / "u_star.csv", res.u, s.grid);
  ctx.traces.push_back(trace_of("optimizer final", problem.forward(res.u)));

  double increase = -1e300;
  for (std::size_t k = 1; k < res.history.size(); ++k)
    increase = std::max(increase, res.history[k].objective - res.history[k - 1].objective);
  if (res.history.size() < 2) increase = 0.0;
  const double phi0 = res.history.front().objective;
  double best = 1.0;
  for (const IterationRecord& it : res.history)
    if (it.iter <= 20) best = std::min(best, it.objective / phi0);
  r.checks = {{"max_objective_increase", increase, 0.0, true},
              {"objective_ratio_by_iter_20", best, 0.5, true},
              {"pg_ratio", res.history.back().pg_norm / res.initial_pg_norm, 1e-3, true},
              {"complementarity", res.kkt.complementarity, 0.0, true},
              {"stationarity_ratio", res.kkt.stationarity / res.initial_gradient_norm, 1e-3, true}};
  write_checks(dir, r.checks);
  return r;
}

// ---------------------------------------------------------------- criterion 8

struct TraceExcess {
  double x_cells = -1e300;
  double boundary = 0.0;
  double p_cells = -1e300;
};

/// Growth of the x-support beyond t and of the p-support beyond the force integral, in cells.
TraceExcess trace_excess(const SupportTrace& tr) {
  TraceExcess e;
  const auto& rec = tr.records;
  double force_integral = 0.0;
  for (std::size_t n = 0; n < rec.size(); ++n) {
    e.boundary = std::max(e.boundary, rec[n].boundary_field);
    if (!tr.plasma) continue;
    if (n > 0) force_integral += rec[n - 1].max_force * (rec[n].time - rec[n - 1].time);
    e.x_cells = std::max(e.x_cells, (rec[n].support_x - rec[0].support_x - rec[n].time) / tr.dx);
    e.p_cells = std::max(e.p_cells, (rec[n].support_p - rec[0].support_p - force_integral) / tr.dp);
  }
  return e;
}

SuiteResult suite_support(SuiteContext& ctx) {
  SuiteResult r;
  const auto dir = suite_dir(ctx, "support");
  {
    const RunConfig c = twin_config(32, 32, 128);
    const Scenario s = build_scenario(c);
    ForwardOptions opt = s.options;
    opt.store_snapshots = false;
    const ForwardRun run = run_forward(s.init, s.model, waveform_control(c.objective.twin, s.grid), opt);
    write_diagnostics_csv(dir / "diagnostics.csv", run.diagnostics);
    ctx.traces.push_back(trace_of("support twin", run));
  }
  double x_worst = -1e300, b_worst = 0.0, p_worst = -1e300;
  CsvWriter w(dir / "traces.csv", {"run", "x_growth_excess_cells", "boundary_field_max", "p_growth_excess_cells"});
  for (const SupportTrace& tr : ctx.traces) {
    const TraceExcess e = trace_excess(tr);
    w.row(tr.run, {tr.plasma ? e.x_cells : 0.0, e.boundary, tr.plasma ? e.p_cells : 0.0});
    b_worst = std::max(b_worst, e.boundary);
    if (tr.plasma) {
      x_worst = std::max(x_worst, e.x_cells);
      p_worst = std::max(p_worst, e.p_cells);
    }
  }
  say(ctx, "support over " + std::to_string(ctx.traces.size()) + " runs: x excess " + format_number(x_worst) +
               " cells, boundary " + format_number(b_worst) + ", p excess " + format_number(p_worst) + " cells");
  r.checks = {{"x_support_growth_minus_t_cells", x_worst, 2.0, true},
              {"boundary_field_max", b_worst, 1e-10, true},
              {"p_support_growth_minus_force_integral_cells", p_worst, 1.0, true}};
  write_checks(dir, r.checks);
  return r;
}

// ---------------------------------------------------------------- criterion 9

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SuiteResult suite_determinism(SuiteContext& ctx) {
  SuiteResult r;
  const auto dir = suite_dir(ctx, "determinism");
  std::vector<std::string> others(suite_names().begin(), suite_names().end() - 1);
  for (const std::string& s : others)
    if (!std::filesystem::exists(ctx.out / s / "checks.csv")) run_suite(s, ctx);

  SuiteContext rerun;
  rerun.out = dir / "rerun";
  rerun.threads = ctx.threads == 1 ? 3 : 1;
  rerun.log = ctx.log;
  say(ctx, "determinism: rerunning every suite with " + std::to_string(rerun.threads) + " threads");
  for (const std::string& s : others) run_suite(s, rerun);
  set_thread_count(ctx.threads);

  CsvWriter w(dir / "comparison.csv", {"file", "bytes", "identical"});
  double compared = 0.0, mismatched = 0.0;
  for (const std::string& s : others) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(ctx.out / s))
      if (e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const std::string a = slurp(f);
      const std::filesystem::path other = rerun.out / s / f.filename();
      const bool same = std::filesystem::exists(other) && slurp(other) == a;
      compared += 1.0;
      if (!same) {
        mismatched += 1.0;
        say(ctx, "determinism: " + (std::filesystem::path(s) / f.filename()).string() + " differs");
      }
      w.row((std::filesystem::path(s) / f.filename()).string(), {static_cast<double>(a.size()), same ? 1.0 : 0.0});
    }
  }
  r.checks = {{"files_compared", compared, 1.0, false}, {"files_differing", mismatched, 0.0, true}};
  write_checks(dir, r.checks);
  return r;
}

}  // namespace

SuiteResult run_suite(const std::string& name, SuiteContext& ctx) {
  set_thread_count(ctx.threads);
  const auto t0 = Clock::now();
  say(ctx, "suite " + name + " (" + std::to_string(ctx.threads) + " threads)");
  SuiteResult r;
  if (name == "free-streaming") r = suite_free_streaming(ctx);
  else if (name == "maxwell-oracle") r = suite_maxwell_oracle(ctx);
  else if (name == "conservation") r = suite_conservation(ctx);
  else if (name == "energy-identity") r = suite_energy_identity(ctx);
  else if (name == "gradient") r = suite_gradient(ctx);
  else if (name == "regularization") r = suite_regularization(ctx);
  else if (name == "optimizer") r = suite_optimizer(ctx);
  else if (name == "support") r = suite_support(ctx);
  else if (name == "determinism") r = suite_determinism(ctx);
  else throw ConfigError("unknown suite '" + name + "'");
  r.name = name;
  const auto& n = suite_names();
  r.criterion = static_cast<int>(std::find(n.begin(), n.end(), name) - n.begin()) + 1;
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<SuiteResult> run_validation(const std::vector<std::string>& names, SuiteContext& ctx) {
  std::vector<std::string> wanted;
  for (const std::string& n : names) {
    if (n == "all") {
      wanted = suite_names();
      break;
    }
    if (!is_suite(n)) throw ConfigError("unknown suite '" + n + "'");
    if (std::find(wanted.begin(), wanted.end(), n) == wanted.end()) wanted.push_back(n);
  }
  std::vector<SuiteResult> results;
  for (const std::string& n : suite_names())
    if (std::find(wanted.begin(), wanted.end(), n) != wanted.end()) results.push_back(run_suite(n, ctx));
  return results;
}

std::string summary_line(const SuiteResult& r) {
  std::string s = std::string(r.passed() ? "PASS" : "FAIL") + " criterion " + std::to_string(r.criterion) + " " +
                  r.name + ":";
  const auto add = [&](const Check& c) {
    s += " " + c.name + "=" + fmt_short(c.value) + (c.upper ? "<=" : ">=") + fmt_short(c.threshold) +
         (c.pass() ? "" : "(x)");
  };
  for (const Check& c : r.checks) add(c);
  for (const Check& c : r.runtime) add(c);
  return s;
}

}  // namespace vctl::cli
