#include "vctl/cli/csv.hpp"

#include <fmt/format.h>

#include <cmath>
#include <sstream>

#include "vctl/core/error.hpp"

namespace vctl::cli {

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary) {
  if (!out_) throw IoError("cannot write " + path.string());
  for (std::size_t k = 0; k < header.size(); ++k) out_ << (k ? "," : "") << header[k];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t k = 0; k < values.size(); ++k) out_ << (k ? "," : "") << format_number(values[k]);
  out_ << '\n';
  if (!out_) throw IoError("write failed on " + path_.string());
}

void CsvWriter::row(const std::string& label, const std::vector<double>& values) {
  out_ << label;
  for (double v : values) out_ << ',' << format_number(v);
  out_ << '\n';
  if (!out_) throw IoError("write failed on " + path_.string());
}

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticRecord>& records) {
  CsvWriter w(path, {"step", "time", "mass", "l1", "l2", "linf", "min", "field_energy", "kinetic_energy", "total_energy",
                     "gauss_residual", "charge_norm", "support_x", "support_p", "max_force", "boundary_field",
                     "momentum_boundary_mass"});
  for (const DiagnosticRecord& d : records)
    w.row({static_cast<double>(d.step), d.time, d.mass, d.l1, d.l2, d.linf, d.min_value, d.field_energy, d.kinetic_energy,
           d.total_energy, d.gauss_residual, d.charge_norm, d.support_x, d.support_p, d.max_force, d.boundary_field,
           d.momentum_boundary_mass});
}

void write_control_csv(const std::filesystem::path& path, const ControlTrajectory& u, const PhaseGrid& grid) {
  std::vector<std::string> header{"t"};
  for (int j = 0; j < u.coils(); ++j) header.push_back("u" + std::to_string(j + 1));
  CsvWriter w(path, header);
  for (int k = 0; k < u.times(); ++k) {
    std::vector<double> row{grid.time(k)};
    for (int j = 0; j < u.coils(); ++j) row.push_back(u(j, k));
    w.row(row);
  }
}

ControlTrajectory read_control_csv(const std::filesystem::path& path, const PhaseGrid& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError(path.string() + ": line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ConfigError(path.string() + ": line " + std::to_string(lineno) + ": column count changes");
    rows.push_back(std::move(row));
  }
  if (static_cast<int>(rows.size()) != grid.nt + 1)
    throw ConfigError(path.string() + ": " + std::to_string(rows.size()) + " rows for " +
                      std::to_string(grid.nt + 1) + " time levels");
  const int coils = static_cast<int>(rows.front().size()) - 1;
  ControlTrajectory u(coils, grid.nt + 1);
  for (int k = 0; k <= grid.nt; ++k) {
    if (std::abs(rows[k][0] - grid.time(k)) > 1e-9 * std::max(1.0, grid.final_time()))
      throw ConfigError(path.string() + ": time column does not match the grid at level " + std::to_string(k));
    for (int j = 0; j < coils; ++j) u(j, k) = rows[k][j + 1];
  }
  if (!u.feasible(1e-12)) throw ConfigError(path.string() + ": control violates |u| <= 1");
  return u;
}

void write_history_csv(const std::filesystem::path& path, const std::vector<IterationRecord>& history) {
  CsvWriter w(path, {"iter", "objective", "tracking", "regularization", "step", "pg_norm", "stationarity",
                     "complementarity", "feasibility", "backtracks"});
  for (const IterationRecord& r : history)
    w.row({static_cast<double>(r.iter), r.objective, r.tracking, r.regularization, r.step, r.pg_norm,
           r.stationarity, r.complementarity, r.feasibility, static_cast<double>(r.backtracks)});
}

}  // namespace vctl::cli
