#include <CLI11.hpp>

#include <iostream>

#include "vctl/cli/commands.hpp"
#include "vctl/cli/config.hpp"
#include "vctl/cli/suites.hpp"
#include "vctl/core/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"vctl: controlled Vlasov-Maxwell solver, sensitivities and optimal coil control"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> suites;
  int threads = 0;
  int stride = 0;
  bool dump = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "YAML run configuration (defaults to the twin scenario)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (output.directory)");
    sub->add_option("--threads", threads, "Worker threads (run.threads)")->check(CLI::PositiveNumber);
    sub->add_option("--snapshot-stride", stride, "Adjoint snapshot stride (output.snapshot_stride)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--dump-config", dump, "Print the normalised configuration and exit");
  };
  for (const char* name : {"simulate", "gradcheck", "optimize"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub);
  }
  app.get_subcommand("simulate")->description("Forward run; writes diagnostics.csv");
  app.get_subcommand("gradcheck")->description("Adjoint gradient against finite differences; writes gradcheck.csv");
  app.get_subcommand("optimize")->description("Projected gradient optimisation; writes history.csv and u_star.csv");
  CLI::App* validate = app.add_subcommand("validate", "Acceptance suites; writes one directory of CSVs per suite");
  add_common(validate);
  validate->add_option("--suite", suites, "Suite name or 'all' (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(vctl::ErrorClass::config);
  }

  try {
    vctl::cli::RunConfig config = config_path.empty()
                                      ? vctl::cli::parse_config_string("", vctl::cli::config_environment())
                                      : vctl::cli::parse_config(config_path);
    if (!out_dir.empty()) config.output.directory = out_dir;
    if (threads > 0) config.run.threads = threads;
    if (stride > 0) config.output.snapshot_stride = stride;
    for (const std::string& s : suites)
      if (s != "all" && !vctl::cli::is_suite(s)) throw vctl::ConfigError("unknown suite '" + s + "'");
    if (auto v = vctl::cli::config_violations(config); !v.empty()) throw vctl::ConfigError(std::move(v));
    if (dump) {
      std::cout << vctl::cli::dump_config(config);
      return 0;
    }
    vctl::cli::CommandOptions options;
    options.suites = suites;
    options.log = &std::cout;
    return vctl::cli::run_command(app.get_subcommands().front()->get_name(), config, options);
  } catch (const vctl::ConfigError& e) {
    for (const std::string& v : e.violations()) std::cerr << "config error: " << v << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return vctl::cli::exit_code_for(e);
  }
}
