#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "vctl/core/control.hpp"
#include "vctl/forward/simulation.hpp"
#include "vctl/optimize/optimizer.hpp"

namespace vctl::cli {

/// Comma separated table; numbers are written with 17 significant digits so
/// identical doubles give identical bytes.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  /// Row with a leading text cell.
  void row(const std::string& label, const std::vector<double>& values);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string format_number(double v);

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticRecord>& records);
/// Columns t, u1..uN.
void write_control_csv(const std::filesystem::path& path, const ControlTrajectory& u, const PhaseGrid& grid);
ControlTrajectory read_control_csv(const std::filesystem::path& path, const PhaseGrid& grid);
void write_history_csv(const std::filesystem::path& path, const std::vector<IterationRecord>& history);

}  // namespace vctl::cli
