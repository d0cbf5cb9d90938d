#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "nrl/spectral/ops.hpp"

// Binary snapshot record:
//   "NRLF", u16 version=1, u8 dim, u8 component_count, u32 N per axis, f64 L,
//   then component_count * N^dim complex coefficients as little-endian f64 (re, im),
//   row-major, FFT order along each axis. Coefficient c_0 is the spatial mean.

namespace nrl {

namespace detail {

template <typename T>
void put_le(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw IoError("snapshot: truncated record");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace detail

inline constexpr std::uint16_t kSnapshotVersion = 1;

inline void write_snapshot(std::ostream& os, const std::vector<Field<double>>& comps) {
  if (comps.empty() || comps.size() > 255) throw ShapeError("snapshot: need 1..255 components");
  const GridSpec& g = comps[0].grid();
  for (const auto& c : comps) require_same_grid(g, c.grid(), "snapshot");
  os.write("NRLF", 4);
  detail::put_le<std::uint16_t>(os, kSnapshotVersion);
  detail::put_le<std::uint8_t>(os, static_cast<std::uint8_t>(g.dim));
  detail::put_le<std::uint8_t>(os, static_cast<std::uint8_t>(comps.size()));
  for (int a = 0; a < g.dim; ++a) detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.n));
  detail::put_le<double>(os, g.length);
  for (const auto& c : comps)
    for (Eigen::Index i = 0; i < c.coeffs().size(); ++i) {
      detail::put_le<double>(os, c.coeffs()[i].real());
      detail::put_le<double>(os, c.coeffs()[i].imag());
    }
}

// Realness is not stored; it is recovered from the Hermitian symmetry of the data.
inline std::vector<Field<double>> read_snapshot(std::istream& is, int dealias_pad = 2) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "NRLF", 4) != 0) throw IoError("snapshot: bad magic");
  auto version = detail::get_le<std::uint16_t>(is);
  if (version != kSnapshotVersion) throw IoError("snapshot: unsupported version " + std::to_string(version));
  GridSpec g;
  g.dim = detail::get_le<std::uint8_t>(is);
  int ncomp = detail::get_le<std::uint8_t>(is);
  if (g.dim < 1 || g.dim > 3) throw IoError("snapshot: bad dim");
  g.n = static_cast<int>(detail::get_le<std::uint32_t>(is));
  for (int a = 1; a < g.dim; ++a)
    if (static_cast<int>(detail::get_le<std::uint32_t>(is)) != g.n) throw IoError("snapshot: anisotropic grids unsupported");
  g.length = detail::get_le<double>(is);
  g.dealias_pad = dealias_pad;
  g.validate();
  std::vector<Field<double>> out;
  for (int c = 0; c < ncomp; ++c) {
    Field<double>::Coeffs co(static_cast<Eigen::Index>(g.size()));
    for (Eigen::Index i = 0; i < co.size(); ++i) {
      double re = detail::get_le<double>(is);
      double im = detail::get_le<double>(is);
      co[i] = {re, im};
    }
    Field<double> f(g, std::move(co), false);
    f.set_real(hermitian_defect(f) <= 1e-14);
    out.push_back(std::move(f));
  }
  return out;
}

inline void write_snapshot_file(const std::string& path, const std::vector<Field<double>>& comps) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_snapshot(os, comps);
  if (!os) throw IoError("write failed: " + path);
}

inline std::vector<Field<double>> read_snapshot_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  return read_snapshot(is);
}

}  // namespace nrl
