#include "vctl/cli/commands.hpp"

#include <fstream>

#include "vctl/cli/csv.hpp"
#include "vctl/cli/gradcheck.hpp"
#include "vctl/cli/scenario.hpp"
#include "vctl/cli/suites.hpp"
#include "vctl/core/error.hpp"
#include "vctl/core/grid_io.hpp"
#include "vctl/core/parallel.hpp"
#include "vctl/optimize/optimizer.hpp"
#include "vctl/sensitivity/reduced_problem.hpp"

namespace vctl::cli {
namespace {

void say(const CommandOptions& o, const std::string& s) {
  if (o.log) *o.log << s << std::endl;
}

std::filesystem::path prepare_output(const RunConfig& c) {
  const std::filesystem::path dir = c.output.directory;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::ofstream out(dir / "config.yaml");
  if (!out) throw IoError("cannot write " + (dir / "config.yaml").string());
  out << dump_config(c);
  return dir;
}

int simulate(const RunConfig& c, const CommandOptions& o) {
  const auto dir = prepare_output(c);
  const Scenario s = build_scenario(c);
  ForwardOptions opt = s.options;
  opt.store_snapshots = !c.output.snapshot_directory.empty();
  const std::filesystem::path snaps = dir / "snapshots";
  if (!c.output.snapshot_steps.empty()) std::filesystem::create_directories(snaps);
  opt.observer = [&](const SimulationState& st) {
    for (int k : c.output.snapshot_steps)
      if (k == st.t_index) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "step_%06d", k);
        write_distribution(snaps / (std::string(stem) + "_f.vctl"), st.f, k, s.grid.time(k));
        write_fields(snaps, stem, st.fields, s.grid, k, s.grid.time(k));
      }
  };
  const ForwardRun run = run_forward(s.init, s.model, s.control, opt);
  write_diagnostics_csv(dir / "diagnostics.csv", run.diagnostics);
  write_control_csv(dir / "control.csv", s.control, s.grid);
  const DiagnosticRecord& last = run.diagnostics.back();
  say(o, "simulate: " + std::to_string(s.grid.nt) + " steps, mass " + format_number(last.mass) + ", total energy " +
             format_number(last.total_energy) + ", wrote " + (dir / "diagnostics.csv").string());
  return 0;
}

ControlTrajectory gradcheck_base(const RunConfig& c, const Scenario& s) {
  if (c.control.source != "zeros") return s.control;
  ControlTrajectory u = c.objective.target == "twin" ? waveform_control(c.objective.twin, s.grid)
                                                     : ControlTrajectory(s.model.coils(), s.grid.nt + 1, 0.5);
  u.scale(c.gradcheck.base_scale);
  return u;
}

int gradcheck(const RunConfig& c, const CommandOptions& o) {
  const auto dir = prepare_output(c);
  const Scenario s = build_scenario(c);
  ReducedProblem problem(s.init, s.model, make_target(s), s.weights, s.options);
  const GradcheckReport rep =
      gradient_check(problem, gradcheck_base(c, s), c.gradcheck, [&](const std::string& m) { say(o, m); });
  write_gradcheck_csv(dir / "gradcheck.csv", rep);
  for (std::size_t d = 0; d < rep.plateau_eps.size(); ++d)
    say(o, "direction " + std::to_string(d) + ": plateau eps " + format_number(rep.plateau_eps[d]) + " rel err " +
               format_number(rep.plateau_rel_err[d]) + ", duality gap " + format_number(rep.duality_gap[d]));
  return 0;
}

int optimize(const RunConfig& c, const CommandOptions& o) {
  const auto dir = prepare_output(c);
  const Scenario s = build_scenario(c);
  ReducedProblem problem(s.init, s.model, make_target(s), s.weights, s.options);
  const OptimizeResult res = minimize(problem, s.control, c.optimizer, [&](const IterationRecord& r) {
    say(o, "iter " + std::to_string(r.iter) + " objective " + format_number(r.objective) + " pg " +
               format_number(r.pg_norm) + " step " + format_number(r.step));
  });
  write_history_csv(dir / "history.csv", res.history);
  write_control_csv(dir / "u_star.csv", res.u, s.grid);
  say(o, "optimize: " + to_string(res.status) + " after " + std::to_string(res.history.back().iter) +
             " iterations, stationarity " + format_number(res.kkt.stationarity) + ", complementarity " +
             format_number(res.kkt.complementarity));
  return 0;
}

int validate(const RunConfig& c, const CommandOptions& o) {
  const auto dir = prepare_output(c);
  SuiteContext ctx;
  ctx.out = dir;
  ctx.threads = c.run.threads;
  ctx.log = [&](const std::string& m) { say(o, m); };
  const std::vector<SuiteResult> results = run_validation(o.suites.empty() ? c.validate.suites : o.suites, ctx);
  bool ok = true;
  CsvWriter w(dir / "summary.csv", {"criterion", "passed"});
  for (const SuiteResult& r : results) {
    say(o, summary_line(r));
    w.row(r.name, {static_cast<double>(r.criterion), r.passed() ? 1.0 : 0.0});
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config, const CommandOptions& options) {
  set_thread_count(config.run.threads);
  if (command == "simulate") return simulate(config, options);
  if (command == "gradcheck") return gradcheck(config, options);
  if (command == "optimize") return optimize(config, options);
  if (command == "validate") return validate(config, options);
  throw ConfigError("unknown command '" + command + "'");
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return err->exit_code();
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return static_cast<int>(ErrorClass::io);
  return static_cast<int>(ErrorClass::numerical);
}

}  // namespace vctl::cli
