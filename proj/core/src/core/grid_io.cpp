#include "vctl/core/grid_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

#include "vctl/core/error.hpp"

namespace vctl {
namespace {

template <class T>
void put_le(unsigned char* dst, T value) {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t k = 0; k < sizeof(T); ++k) dst[k] = raw[sizeof(T) - 1 - k];
  else
    std::memcpy(dst, raw, sizeof(T));
}

template <class T>
T get_le(const unsigned char* src) {
  unsigned char raw[sizeof(T)];
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t k = 0; k < sizeof(T); ++k) raw[k] = src[sizeof(T) - 1 - k];
  else
    std::memcpy(raw, src, sizeof(T));
  T value;
  std::memcpy(&value, raw, sizeof(T));
  return value;
}

DumpHeader make_header(DumpKind kind, std::uint32_t d0, std::uint32_t d1, std::uint32_t d2, std::uint32_t d3,
                       const PhaseGrid& grid, std::uint64_t step, double time) {
  DumpHeader h;
  h.kind = kind;
  h.dims[0] = d0;
  h.dims[1] = d1;
  h.dims[2] = d2;
  h.dims[3] = d3;
  h.x_extent = grid.x_extent;
  h.p_extent = grid.p_extent;
  h.time_index = step;
  h.time = time;
  return h;
}

void expect_dims(const DumpFile& file, DumpKind kind, std::uint32_t d0, std::uint32_t d1, std::uint32_t d2,
                 std::uint32_t d3, const std::filesystem::path& path) {
  const DumpHeader& h = file.header;
  if (h.kind != kind || h.dims[0] != d0 || h.dims[1] != d1 || h.dims[2] != d2 || h.dims[3] != d3)
    throw IoError("dump " + path.string() + " does not match the expected kind or grid dimensions");
}

}  // namespace

std::size_t DumpHeader::element_count() const {
  return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2] * dims[3];
}

std::vector<unsigned char> encode_header(const DumpHeader& h) {
  std::vector<unsigned char> out(kDumpHeaderBytes, 0);
  std::memcpy(out.data(), "VCTL", 4);
  put_le<std::uint32_t>(out.data() + 4, h.version);
  put_le<std::uint32_t>(out.data() + 8, static_cast<std::uint32_t>(h.kind));
  for (int k = 0; k < 4; ++k) put_le<std::uint32_t>(out.data() + 12 + 4 * k, h.dims[k]);
  put_le<std::uint32_t>(out.data() + 28, 0);
  put_le<double>(out.data() + 32, h.x_extent);
  put_le<double>(out.data() + 40, h.p_extent);
  put_le<std::uint64_t>(out.data() + 48, h.time_index);
  put_le<double>(out.data() + 56, h.time);
  return out;
}

DumpHeader decode_header(std::span<const unsigned char> bytes) {
  if (bytes.size() < kDumpHeaderBytes) throw IoError("truncated dump header");
  if (std::memcmp(bytes.data(), "VCTL", 4) != 0) throw IoError("bad dump magic");
  DumpHeader h;
  h.version = get_le<std::uint32_t>(bytes.data() + 4);
  if (h.version != kDumpVersion) throw IoError("unsupported dump version " + std::to_string(h.version));
  const auto kind = get_le<std::uint32_t>(bytes.data() + 8);
  if (kind > static_cast<std::uint32_t>(DumpKind::nodes)) throw IoError("unknown dump kind " + std::to_string(kind));
  h.kind = static_cast<DumpKind>(kind);
  for (int k = 0; k < 4; ++k) h.dims[k] = get_le<std::uint32_t>(bytes.data() + 12 + 4 * k);
  h.x_extent = get_le<double>(bytes.data() + 32);
  h.p_extent = get_le<double>(bytes.data() + 40);
  h.time_index = get_le<std::uint64_t>(bytes.data() + 48);
  h.time = get_le<double>(bytes.data() + 56);
  return h;
}

void write_dump(const std::filesystem::path& path, const DumpHeader& header, std::span<const double> data) {
  if (data.size() != header.element_count()) throw IoError("dump payload does not match header dimensions");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const auto head = encode_header(header);
  out.write(reinterpret_cast<const char*>(head.data()), static_cast<std::streamsize>(head.size()));
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
  } else {
    std::vector<unsigned char> buf(data.size() * sizeof(double));
    for (std::size_t k = 0; k < data.size(); ++k) put_le<double>(buf.data() + k * sizeof(double), data[k]);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw IoError("write to " + path.string() + " failed");
}

DumpFile read_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> head(kDumpHeaderBytes);
  in.read(reinterpret_cast<char*>(head.data()), static_cast<std::streamsize>(head.size()));
  if (in.gcount() != static_cast<std::streamsize>(head.size())) throw IoError("truncated dump " + path.string());
  DumpFile file;
  file.header = decode_header(head);
  const std::size_t n = file.header.element_count();
  std::vector<unsigned char> buf(n * sizeof(double));
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) throw IoError("truncated dump payload " + path.string());
  file.data.resize(n);
  for (std::size_t k = 0; k < n; ++k) file.data[k] = get_le<double>(buf.data() + k * sizeof(double));
  return file;
}

void write_distribution(const std::filesystem::path& path, const Distribution& f, std::uint64_t step, double time) {
  const PhaseGrid& g = f.grid();
  const auto nx = static_cast<std::uint32_t>(g.nx);
  const auto np = static_cast<std::uint32_t>(g.np);
  write_dump(path, make_header(DumpKind::distribution, nx, nx, np, np, g, step, time), f.values());
}

Distribution read_distribution(const std::filesystem::path& path, const PhaseGrid& grid) {
  DumpFile file = read_dump(path);
  const auto nx = static_cast<std::uint32_t>(grid.nx);
  const auto np = static_cast<std::uint32_t>(grid.np);
  expect_dims(file, DumpKind::distribution, nx, nx, np, np, path);
  Distribution f(grid);
  std::copy(file.data.begin(), file.data.end(), f.values().begin());
  return f;
}

void write_cell_scalar(const std::filesystem::path& path, const SpatialScalar& s, const PhaseGrid& grid,
                       std::uint64_t step, double time) {
  const auto nx = static_cast<std::uint32_t>(grid.nx);
  write_dump(path, make_header(DumpKind::cell_scalar, nx, nx, 1, 1, grid, step, time), s.v);
}

SpatialScalar read_cell_scalar(const std::filesystem::path& path, const PhaseGrid& grid) {
  DumpFile file = read_dump(path);
  const auto nx = static_cast<std::uint32_t>(grid.nx);
  expect_dims(file, DumpKind::cell_scalar, nx, nx, 1, 1, path);
  SpatialScalar s(grid.nx);
  s.v = std::move(file.data);
  return s;
}

void write_fields(const std::filesystem::path& directory, const std::string& stem, const FieldState& fields,
                  const PhaseGrid& grid, std::uint64_t step, double time) {
  const auto nx = static_cast<std::uint32_t>(grid.nx);
  write_dump(directory / (stem + "_e1.vctl"), make_header(DumpKind::face_x1, nx + 1, nx, 1, 1, grid, step, time),
             fields.e.c1);
  write_dump(directory / (stem + "_e2.vctl"), make_header(DumpKind::face_x2, nx, nx + 1, 1, 1, grid, step, time),
             fields.e.c2);
  write_dump(directory / (stem + "_b.vctl"), make_header(DumpKind::nodes, nx + 1, nx + 1, 1, 1, grid, step, time),
             fields.b);
}

}  // namespace vctl
