#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <numbers>
#include <tuple>

#include <Eigen/Core>

#include "nrl/spectral/grid.hpp"

namespace nrl {

// Periodic field stored as Fourier coefficients in FFT order.
// Normalization: u(x) = sum_k c_k e^{i kappa.x}, so c_0 is the spatial mean.
template <typename Scalar>
class Field {
 public:
  using Complex = std::complex<Scalar>;
  using Coeffs = Eigen::Array<Complex, Eigen::Dynamic, 1>;

  Field() = default;
  explicit Field(const GridSpec& g, bool is_real = true)
      : grid_(g), c_(Coeffs::Zero(static_cast<Eigen::Index>(g.size()))), real_(is_real) {
    g.validate();
  }
  Field(const GridSpec& g, Coeffs c, bool is_real) : grid_(g), c_(std::move(c)), real_(is_real) {
    g.validate();
    if (c_.size() != static_cast<Eigen::Index>(g.size())) throw ShapeError("field: coefficient count does not match grid");
  }

  const GridSpec& grid() const { return grid_; }
  const Coeffs& coeffs() const { return c_; }
  Coeffs& coeffs() { return c_; }
  bool is_real() const { return real_; }
  void set_real(bool r) { real_ = r; }

  // coefficient of signed multi-mode k
  Complex& mode(std::array<int, 3> k) { return c_[index_of(k)]; }
  const Complex& mode(std::array<int, 3> k) const { return c_[index_of(k)]; }

  template <typename T>
  Field<T> cast() const {
    return Field<T>(grid_, c_.template cast<std::complex<T>>(), real_);
  }

  Field& operator+=(const Field& o) {
    require_same_grid(grid_, o.grid_, "field +=");
    c_ += o.c_;
    real_ = real_ && o.real_;
    return *this;
  }
  Field& operator-=(const Field& o) {
    require_same_grid(grid_, o.grid_, "field -=");
    c_ -= o.c_;
    real_ = real_ && o.real_;
    return *this;
  }
  Field& operator*=(Scalar s) {
    c_ *= Complex(s, 0);
    return *this;
  }
  Field& operator*=(Complex s) {
    c_ *= s;
    real_ = real_ && s.imag() == Scalar(0);
    return *this;
  }

 private:
  std::size_t index_of(std::array<int, 3> k) const {
    std::array<int, 3> i{0, 0, 0};
    for (int a = 0; a < grid_.dim; ++a) i[a] = storage_index(k[a], grid_.n);
    return flatten(i, grid_.dim, grid_.n);
  }

  GridSpec grid_{};
  Coeffs c_;
  bool real_ = true;
};

template <typename S>
Field<S> operator+(Field<S> a, const Field<S>& b) { return a += b; }
template <typename S>
Field<S> operator-(Field<S> a, const Field<S>& b) { return a -= b; }
template <typename S>
Field<S> operator-(Field<S> a) { return a *= S(-1); }
template <typename S>
Field<S> operator*(Field<S> a, S s) { return a *= s; }
template <typename S>
Field<S> operator*(S s, Field<S> a) { return a *= s; }
template <typename S>
Field<S> operator*(Field<S> a, std::complex<S> s) { return a *= s; }
template <typename S>
Field<S> operator*(std::complex<S> s, Field<S> a) { return a *= s; }
template <typename S>
Field<S> operator/(Field<S> a, S s) { return a *= S(1) / s; }

// Wavenumber tables for a grid, cached per thread.
template <typename Scalar>
struct Wavenumbers {
  Eigen::Array<Scalar, Eigen::Dynamic, 1> kappa;   // per axis index, FFT order
  Eigen::Array<Scalar, Eigen::Dynamic, 1> dkappa;  // same, Nyquist zeroed (first derivative)
  Eigen::Array<Scalar, Eigen::Dynamic, 1> k2;      // |kappa|^2 per flat mode

  static const Wavenumbers& of(const GridSpec& g) {
    thread_local std::map<std::tuple<int, int, double>, std::unique_ptr<Wavenumbers>> cache;
    auto key = std::make_tuple(g.dim, g.n, g.length);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto w = std::make_unique<Wavenumbers>();
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    w->kappa.resize(g.n);
    w->dkappa.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
      w->kappa[i] = two_pi * Scalar(signed_mode(i, g.n)) / Scalar(g.length);
      w->dkappa[i] = (i == g.n / 2) ? Scalar(0) : w->kappa[i];
    }
    w->k2.resize(static_cast<Eigen::Index>(g.size()));
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      auto m = unflatten(idx, g.dim, g.n);
      Scalar s = 0;
      for (int a = 0; a < g.dim; ++a) s += w->kappa[m[a]] * w->kappa[m[a]];
      w->k2[static_cast<Eigen::Index>(idx)] = s;
    }
    return *cache.emplace(key, std::move(w)).first->second;
  }
};

}  // namespace nrl
