#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <string>

#include "nrl/errors.hpp"

namespace nrl {

// Periodic box [0,L)^dim sampled with n points per axis.
struct GridSpec {
  int dim = 1;
  int n = 64;
  double length = 16.0 * std::numbers::pi;
  int dealias_pad = 2;

  std::size_t size() const { return ipow(n); }
  int padded_n() const { return n * dealias_pad; }
  std::size_t padded_size() const { return ipow(padded_n()); }
  double volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= length;
    return v;
  }
  GridSpec padded() const {
    GridSpec g = *this;
    g.n = padded_n();
    return g;
  }

  void validate() const {
    if (dim < 1 || dim > 3) throw DomainError("grid: dim must be 1, 2 or 3, got " + std::to_string(dim));
    if (n < 8 || n % 2 != 0) throw DomainError("grid: points per axis must be even and >= 8, got " + std::to_string(n));
    if (!(length > 0.0)) throw DomainError("grid: box length must be positive");
    if (dealias_pad < 2) throw DomainError("grid: dealias_pad must be >= 2");
  }

  bool operator==(const GridSpec&) const = default;

 private:
  std::size_t ipow(int m) const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(m);
    return s;
  }
};

// FFT storage index -> signed mode number in [-n/2, n/2)
inline int signed_mode(int i, int n) { return i < n / 2 ? i : i - n; }
inline int storage_index(int k, int n) { return k >= 0 ? k : k + n; }

// row-major, axis 0 slowest
inline std::array<int, 3> unflatten(std::size_t idx, int dim, int n) {
  std::array<int, 3> out{0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    out[a] = static_cast<int>(idx % static_cast<std::size_t>(n));
    idx /= static_cast<std::size_t>(n);
  }
  return out;
}

inline std::size_t flatten(const std::array<int, 3>& i, int dim, int n) {
  std::size_t idx = 0;
  for (int a = 0; a < dim; ++a) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i[a]);
  return idx;
}

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
  if (!(a == b)) throw ShapeError(std::string(where) + ": grid mismatch");
}

}  // namespace nrl
