#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "nrl/spectral/fft.hpp"
#include "nrl/spectral/field.hpp"

namespace nrl {

template <typename Scalar>
using Samples = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1>;

// Values on the n^dim grid x_j = j L / n, row-major.
template <typename Scalar>
Samples<Scalar> to_physical(const Field<Scalar>& f) {
  Samples<Scalar> a = f.coeffs();
  detail::fft_inplace(a, f.grid().dim, f.grid().n, true);
  return a;
}

template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> to_physical_real(const Field<Scalar>& f) {
  return to_physical(f).real();
}

namespace detail {
// force exact Hermitian symmetry c_{-k} = conj(c_k)
template <typename Scalar>
void symmetrize(Samples<Scalar>& c, const GridSpec& g) {
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto m = unflatten(idx, g.dim, g.n);
    for (int a = 0; a < g.dim; ++a) m[a] = (g.n - m[a]) % g.n;
    const std::size_t j = flatten(m, g.dim, g.n);
    const auto i = static_cast<Eigen::Index>(idx);
    if (j == idx) {
      c[i] = c[i].real();
    } else if (j > idx) {
      auto& cj = c[static_cast<Eigen::Index>(j)];
      const auto avg = (c[i] + std::conj(cj)) * Scalar(0.5);
      c[i] = avg;
      cj = std::conj(avg);
    }
  }
}
}  // namespace detail

template <typename Scalar>
Field<Scalar> to_spectral(Samples<Scalar> samples, const GridSpec& g, bool is_real = false) {
  g.validate();
  if (samples.size() != static_cast<Eigen::Index>(g.size())) throw ShapeError("to_spectral: sample count does not match grid");
  detail::fft_inplace(samples, g.dim, g.n, false);
  samples *= std::complex<Scalar>(Scalar(1) / Scalar(g.size()), 0);
  if (is_real) detail::symmetrize(samples, g);
  return Field<Scalar>(g, std::move(samples), is_real);
}

template <typename Scalar>
Field<Scalar> to_spectral_real(const Eigen::Array<Scalar, Eigen::Dynamic, 1>& samples, const GridSpec& g) {
  return to_spectral<Scalar>(samples.template cast<std::complex<Scalar>>(), g, true);
}

// Sample a callable x -> value on the grid. x is a std::array<Scalar,3>.
template <typename Scalar, typename Fn>
Field<Scalar> sample(const GridSpec& g, Fn&& fn, bool is_real = true) {
  g.validate();
  Samples<Scalar> s(static_cast<Eigen::Index>(g.size()));
  const Scalar h = Scalar(g.length) / Scalar(g.n);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto m = unflatten(idx, g.dim, g.n);
    std::array<Scalar, 3> x{0, 0, 0};
    for (int a = 0; a < g.dim; ++a) x[a] = h * Scalar(m[a]);
    s[static_cast<Eigen::Index>(idx)] = std::complex<Scalar>(fn(x));
  }
  return to_spectral<Scalar>(std::move(s), g, is_real);
}

template <typename Scalar>
Field<Scalar> constant_field(const GridSpec& g, std::complex<Scalar> c) {
  Field<Scalar> f(g, c.imag() == Scalar(0));
  f.coeffs()[0] = c;
  return f;
}

// Multiply mode k by m(k) for a per-flat-mode multiplier.
template <typename Scalar, typename Fn>
Field<Scalar> apply_multiplier(const Field<Scalar>& f, Fn&& m, bool keeps_real) {
  Field<Scalar> out = f;
  auto& c = out.coeffs();
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= m(i);
  out.set_real(f.is_real() && keeps_real);
  return out;
}

// i kappa_axis; the Nyquist mode has no antisymmetric partner, its derivative is set to 0.
template <typename Scalar>
Field<Scalar> derivative(const Field<Scalar>& f, int axis) {
  const auto& g = f.grid();
  if (axis < 0 || axis >= g.dim) throw ShapeError("derivative: axis out of range");
  const auto& wn = Wavenumbers<Scalar>::of(g);
  Field<Scalar> out = f;
  auto& c = out.coeffs();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto m = unflatten(idx, g.dim, g.n);
    c[static_cast<Eigen::Index>(idx)] *= std::complex<Scalar>(0, wn.dkappa[m[axis]]);
  }
  return out;
}

template <typename Scalar>
std::vector<Field<Scalar>> gradient(const Field<Scalar>& f) {
  std::vector<Field<Scalar>> out;
  for (int a = 0; a < f.grid().dim; ++a) out.push_back(derivative(f, a));
  return out;
}

template <typename Scalar>
Field<Scalar> divergence(const std::vector<Field<Scalar>>& w) {
  if (w.empty()) throw ShapeError("divergence: empty vector field");
  if (static_cast<int>(w.size()) != w[0].grid().dim) throw ShapeError("divergence: component count != dim");
  Field<Scalar> out = derivative(w[0], 0);
  for (int a = 1; a < static_cast<int>(w.size()); ++a) out += derivative(w[a], a);
  return out;
}

// -|kappa|^2, Nyquist included
template <typename Scalar>
Field<Scalar> laplacian(const Field<Scalar>& f) {
  const auto& k2 = Wavenumbers<Scalar>::of(f.grid()).k2;
  Field<Scalar> out = f;
  out.coeffs() *= (-k2).template cast<std::complex<Scalar>>();
  return out;
}

template <typename Scalar>
Scalar sobolev_norm(const Field<Scalar>& f, Scalar s) {
  const auto& k2 = Wavenumbers<Scalar>::of(f.grid()).k2;
  Scalar acc = 0;
  const auto& c = f.coeffs();
  if (s == Scalar(0)) {
    acc = c.abs2().sum();
  } else {
    acc = ((Scalar(1) + k2).pow(s) * c.abs2()).sum();
  }
  return std::sqrt(acc * Scalar(f.grid().volume()));
}

template <typename Scalar>
Scalar l2_norm(const Field<Scalar>& f) { return sobolev_norm(f, Scalar(0)); }

// conj of the physical field: c'_k = conj(c_{-k})
template <typename Scalar>
Field<Scalar> conj(const Field<Scalar>& f) {
  const auto& g = f.grid();
  Field<Scalar> out(g, f.is_real());
  auto& o = out.coeffs();
  const auto& c = f.coeffs();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto m = unflatten(idx, g.dim, g.n);
    for (int a = 0; a < g.dim; ++a) m[a] = (g.n - m[a]) % g.n;
    o[static_cast<Eigen::Index>(idx)] = std::conj(c[static_cast<Eigen::Index>(flatten(m, g.dim, g.n))]);
  }
  return out;
}

template <typename Scalar>
Field<Scalar> real_part(const Field<Scalar>& f) {
  Field<Scalar> r = (f + conj(f)) * Scalar(0.5);
  r.set_real(true);
  return r;
}

template <typename Scalar>
Field<Scalar> imag_part(const Field<Scalar>& f) {
  Field<Scalar> r = (f - conj(f)) * std::complex<Scalar>(0, Scalar(-0.5));
  r.set_real(true);
  return r;
}

// max_k |c_{-k} - conj(c_k)| relative to max |c_k|
template <typename Scalar>
Scalar hermitian_defect(const Field<Scalar>& f) {
  Scalar scale = f.coeffs().abs().maxCoeff();
  if (scale == Scalar(0)) return 0;
  return (conj(f).coeffs() - f.coeffs()).abs().maxCoeff() / scale;
}

template <typename Scalar>
Scalar max_abs_diff(const Field<Scalar>& a, const Field<Scalar>& b) {
  require_same_grid(a.grid(), b.grid(), "max_abs_diff");
  return (a.coeffs() - b.coeffs()).abs().maxCoeff();
}

namespace detail {

// Spread coefficients onto the padded grid. Nyquist modes are dropped.
template <typename Scalar>
Samples<Scalar> pad_coeffs(const Field<Scalar>& f) {
  const auto& g = f.grid();
  const int m = g.padded_n();
  Samples<Scalar> out = Samples<Scalar>::Zero(static_cast<Eigen::Index>(g.padded_size()));
  const auto& c = f.coeffs();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto i = unflatten(idx, g.dim, g.n);
    bool nyquist = false;
    std::array<int, 3> j{0, 0, 0};
    for (int a = 0; a < g.dim; ++a) {
      if (i[a] == g.n / 2) nyquist = true;
      j[a] = storage_index(signed_mode(i[a], g.n), m);
    }
    if (!nyquist) out[static_cast<Eigen::Index>(flatten(j, g.dim, m))] = c[static_cast<Eigen::Index>(idx)];
  }
  return out;
}

template <typename Scalar>
Field<Scalar> truncate_coeffs(const Samples<Scalar>& padded, const GridSpec& g, bool is_real) {
  const int m = g.padded_n();
  Field<Scalar> out(g, is_real);
  auto& c = out.coeffs();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto i = unflatten(idx, g.dim, g.n);
    bool nyquist = false;
    std::array<int, 3> j{0, 0, 0};
    for (int a = 0; a < g.dim; ++a) {
      if (i[a] == g.n / 2) nyquist = true;
      j[a] = storage_index(signed_mode(i[a], g.n), m);
    }
    c[static_cast<Eigen::Index>(idx)] = nyquist ? std::complex<Scalar>(0) : padded[static_cast<Eigen::Index>(flatten(j, g.dim, m))];
  }
  return out;
}

}  // namespace detail

// Zero every mode with a Nyquist index on some axis.
template <typename Scalar>
Field<Scalar> drop_nyquist(Field<Scalar> f) {
  const auto& g = f.grid();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto i = unflatten(idx, g.dim, g.n);
    for (int a = 0; a < g.dim; ++a)
      if (i[a] == g.n / 2) f.coeffs()[static_cast<Eigen::Index>(idx)] = 0;
  }
  return f;
}

// Physical values of f on the dealiasing grid (n * dealias_pad points per axis).
template <typename Scalar>
Samples<Scalar> to_padded_physical(const Field<Scalar>& f) {
  Samples<Scalar> a = detail::pad_coeffs(f);
  detail::fft_inplace(a, f.grid().dim, f.grid().padded_n(), true);
  return a;
}

// Back from the dealiasing grid, keeping |k| < n/2.
template <typename Scalar>
Field<Scalar> from_padded_physical(Samples<Scalar> values, const GridSpec& g, bool is_real) {
  if (values.size() != static_cast<Eigen::Index>(g.padded_size())) throw ShapeError("from_padded_physical: size mismatch");
  if (is_real) values = values.real().template cast<std::complex<Scalar>>();
  detail::fft_inplace(values, g.dim, g.padded_n(), false);
  values *= std::complex<Scalar>(Scalar(1) / Scalar(g.padded_size()), 0);
  Field<Scalar> out = detail::truncate_coeffs(values, g, is_real);
  if (is_real) detail::symmetrize(out.coeffs(), g);
  return out;
}

namespace detail {
template <typename Scalar>
bool coeff_less(const Field<Scalar>& a, const Field<Scalar>& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i].real() != y[i].real()) return x[i].real() < y[i].real();
    if (x[i].imag() != y[i].imag()) return x[i].imag() < y[i].imag();
  }
  return false;
}
}  // namespace detail

// Dealiased f*g*h. Arguments are put in a canonical order first so the
// result does not depend on argument order.
template <typename Scalar>
Field<Scalar> triple_product(const Field<Scalar>& f, const Field<Scalar>& g, const Field<Scalar>& h) {
  require_same_grid(f.grid(), g.grid(), "triple_product");
  require_same_grid(f.grid(), h.grid(), "triple_product");
  std::array<const Field<Scalar>*, 3> args{&f, &g, &h};
  std::sort(args.begin(), args.end(), [](auto* a, auto* b) { return detail::coeff_less(*a, *b); });
  Samples<Scalar> p = to_padded_physical(*args[0]);
  p *= to_padded_physical(*args[1]);
  p *= to_padded_physical(*args[2]);
  return from_padded_physical(std::move(p), f.grid(), f.is_real() && g.is_real() && h.is_real());
}

template <typename Scalar>
Field<Scalar> cube(const Field<Scalar>& f) {
  Samples<Scalar> p = to_padded_physical(f);
  Samples<Scalar> q = p * p * p;
  return from_padded_physical(std::move(q), f.grid(), f.is_real());
}

}  // namespace nrl
