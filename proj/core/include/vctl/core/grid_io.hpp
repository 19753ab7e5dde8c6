#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vctl/core/distribution.hpp"
#include "vctl/core/field_state.hpp"

namespace vctl {

/// What a binary dump contains.
enum class DumpKind : std::uint32_t {
  distribution = 0,  // dims (nx, nx, np, np)
  cell_scalar = 1,   // dims (nx, nx, 1, 1)
  face_x1 = 2,       // dims (nx + 1, nx, 1, 1)
  face_x2 = 3,       // dims (nx, nx + 1, 1, 1)
  nodes = 4,         // dims (nx + 1, nx + 1, 1, 1)
};

/// 64-byte little-endian header preceding the float64 payload.
///
///   offset  0  char[4]  magic "VCTL"
///   offset  4  u32      version
///   offset  8  u32      kind (DumpKind)
///   offset 12  u32[4]   dims, slowest varying first
///   offset 28  u32      reserved (0)
///   offset 32  f64      x_extent
///   offset 40  f64      p_extent
///   offset 48  u64      time index
///   offset 56  f64      time
struct DumpHeader {
  DumpKind kind = DumpKind::distribution;
  std::uint32_t version = 1;
  std::uint32_t dims[4] = {1, 1, 1, 1};
  double x_extent = 0.0;
  double p_extent = 0.0;
  std::uint64_t time_index = 0;
  double time = 0.0;

  std::size_t element_count() const;
};

inline constexpr std::size_t kDumpHeaderBytes = 64;
inline constexpr std::uint32_t kDumpVersion = 1;

void write_dump(const std::filesystem::path& path, const DumpHeader& header, std::span<const double> data);

struct DumpFile {
  DumpHeader header;
  std::vector<double> data;
};
DumpFile read_dump(const std::filesystem::path& path);

void write_distribution(const std::filesystem::path& path, const Distribution& f, std::uint64_t step, double time);
Distribution read_distribution(const std::filesystem::path& path, const PhaseGrid& grid);
void write_cell_scalar(const std::filesystem::path& path, const SpatialScalar& s, const PhaseGrid& grid,
                       std::uint64_t step, double time);
SpatialScalar read_cell_scalar(const std::filesystem::path& path, const PhaseGrid& grid);
void write_fields(const std::filesystem::path& directory, const std::string& stem, const FieldState& fields,
                  const PhaseGrid& grid, std::uint64_t step, double time);

/// Serialises a header to its exact 64-byte on-disk image.
std::vector<unsigned char> encode_header(const DumpHeader& header);
DumpHeader decode_header(std::span<const unsigned char> bytes);

}  // namespace vctl
