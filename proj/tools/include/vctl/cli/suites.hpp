#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "vctl/forward/simulation.hpp"

namespace vctl::cli {

/// One acceptance comparison: value <= threshold (upper bound) or value >= threshold.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool upper = true;

  bool pass() const { return upper ? value <= threshold : value >= threshold; }
};

/// Support and boundary diagnostics of one run, kept for the support suite.
struct SupportTrace {
  std::string run;
  double dx = 0.0;
  double dp = 0.0;
  /// False for field-only runs; then only the boundary-field column is meaningful.
  bool plasma = true;
  std::vector<DiagnosticRecord> records;
};

struct SuiteContext {
  std::filesystem::path out;
  int threads = 1;
  /// Filled by every suite that runs a simulation; read by the support suite.
  std::vector<SupportTrace> traces;
  std::function<void(const std::string&)> log;
};

struct SuiteResult {
  std::string name;
  int criterion = 0;
  std::vector<Check> checks;
  /// Wall-clock limits; reported but kept out of the CSV output.
  std::vector<Check> runtime;
  double seconds = 0.0;
  bool passed() const;
};

/// free-streaming, maxwell-oracle, conservation, energy-identity, gradient,
/// regularization, optimizer, support, determinism (criterion order).
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite, writing its CSV files to ctx.out / name.
SuiteResult run_suite(const std::string& name, SuiteContext& ctx);

/// Runs the named suites ("all" expands to every suite) in criterion order.
std::vector<SuiteResult> run_validation(const std::vector<std::string>& names, SuiteContext& ctx);

/// "PASS criterion 3 conservation: ..." summary lines.
std::string summary_line(const SuiteResult& r);

}  // namespace vctl::cli
