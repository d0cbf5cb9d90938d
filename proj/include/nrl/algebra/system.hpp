#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "nrl/spectral.hpp"

// Algebra of the first-order system
//   dt U - eps^{-1} A(grad) U + eps^{-2} A0 U = F(U),   U = (w, v, u) = (eps grad u, eps^2 dt u, u).
// Component order: w_1..w_d, v, u. A(grad) acts as  w <- grad v,  v <- div w.
// Its Fourier symbol A(i xi) is i times a real symmetric matrix.

namespace nrl {

template <typename Scalar>
using SystemMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>;
template <typename Scalar>
using SymbolVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1, 0, 5, 1>;
template <typename Scalar>
using Wavevector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 3, 1>;

template <typename Scalar>
SystemMatrix<Scalar> a0_matrix(int d) {
  SystemMatrix<Scalar> m = SystemMatrix<Scalar>::Zero(d + 2, d + 2);
  m(d, d + 1) = 1;
  m(d + 1, d) = -1;
  return m;
}

// L_p = ip I + A0
template <typename Scalar>
SystemMatrix<Scalar> l_matrix(int d, int p) {
  SystemMatrix<Scalar> m = a0_matrix<Scalar>(d);
  for (int i = 0; i < d + 2; ++i) m(i, i) += std::complex<Scalar>(0, Scalar(p));
  return m;
}

// e_+ = (0_d, i, 1), e_- = conj(e_+)
template <typename Scalar>
std::pair<SymbolVector<Scalar>, SymbolVector<Scalar>> basis_vectors(int d) {
  SymbolVector<Scalar> ep = SymbolVector<Scalar>::Zero(d + 2);
  ep(d) = std::complex<Scalar>(0, 1);
  ep(d + 1) = 1;
  return {ep, ep.conjugate()};
}

// Orthogonal projector onto ker L_p.
template <typename Scalar>
SystemMatrix<Scalar> projector(int d, int p) {
  using C = std::complex<Scalar>;
  SystemMatrix<Scalar> m = SystemMatrix<Scalar>::Zero(d + 2, d + 2);
  if (p == 0) {
    for (int i = 0; i < d; ++i) m(i, i) = 1;
  } else if (p == 1 || p == -1) {
    const Scalar s = Scalar(p);
    const Scalar h = Scalar(0.5);
    m(d, d) = h;
    m(d, d + 1) = C(0, s * h);
    m(d + 1, d) = C(0, -s * h);
    m(d + 1, d + 1) = h;
  }
  return m;
}

// Inverse of L_p on its range, zero on ker L_p.
template <typename Scalar>
SystemMatrix<Scalar> partial_inverse(int d, int p) {
  using C = std::complex<Scalar>;
  SystemMatrix<Scalar> m = SystemMatrix<Scalar>::Zero(d + 2, d + 2);
  if (p == 0) {
    m(d, d + 1) = -1;
    m(d + 1, d) = 1;
  } else if (p == 1 || p == -1) {
    const Scalar s = Scalar(p);
    const Scalar q = Scalar(0.25);
    for (int i = 0; i < d; ++i) m(i, i) = C(0, -s);
    m(d, d) = C(0, -s * q);
    m(d, d + 1) = -q;
    m(d + 1, d) = q;
    m(d + 1, d + 1) = C(0, -s * q);
  } else {
    const Scalar sp = Scalar(p);
    const Scalar r = Scalar(1) / (Scalar(1) - sp * sp);
    for (int i = 0; i < d; ++i) m(i, i) = C(0, -Scalar(1) / sp);
    m(d, d) = C(0, sp * r);
    m(d, d + 1) = -r;
    m(d + 1, d) = r;
    m(d + 1, d + 1) = C(0, sp * r);
  }
  return m;
}

// A(i xi)
template <typename Scalar>
SystemMatrix<Scalar> symbol_a(const Wavevector<Scalar>& xi) {
  const int d = static_cast<int>(xi.size());
  SystemMatrix<Scalar> m = SystemMatrix<Scalar>::Zero(d + 2, d + 2);
  for (int a = 0; a < d; ++a) {
    m(a, d) = std::complex<Scalar>(0, xi(a));
    m(d, a) = std::complex<Scalar>(0, xi(a));
  }
  return m;
}

// (w, v, u) with every component a field on the same grid
template <typename Scalar>
struct SystemVector {
  std::vector<Field<Scalar>> w;
  Field<Scalar> v;
  Field<Scalar> u;

  static SystemVector zero(const GridSpec& g) {
    SystemVector s;
    for (int a = 0; a < g.dim; ++a) s.w.emplace_back(g);
    s.v = Field<Scalar>(g);
    s.u = Field<Scalar>(g);
    return s;
  }

  int dim() const { return static_cast<int>(w.size()); }
  int components() const { return dim() + 2; }
  const GridSpec& grid() const { return u.grid(); }

  Field<Scalar>& component(int i) { return i < dim() ? w[i] : (i == dim() ? v : u); }
  const Field<Scalar>& component(int i) const { return i < dim() ? w[i] : (i == dim() ? v : u); }

  SystemVector& operator+=(const SystemVector& o) {
    check(o);
    for (int i = 0; i < components(); ++i) component(i) += o.component(i);
    return *this;
  }
  SystemVector& operator-=(const SystemVector& o) {
    check(o);
    for (int i = 0; i < components(); ++i) component(i) -= o.component(i);
    return *this;
  }
  template <typename T>
  SystemVector& operator*=(T s) {
    for (int i = 0; i < components(); ++i) component(i) *= s;
    return *this;
  }

 private:
  void check(const SystemVector& o) const {
    if (o.components() != components()) throw ShapeError("system vector: component count mismatch");
  }
};

template <typename S>
SystemVector<S> operator+(SystemVector<S> a, const SystemVector<S>& b) { return a += b; }
template <typename S>
SystemVector<S> operator-(SystemVector<S> a, const SystemVector<S>& b) { return a -= b; }
template <typename S, typename T>
SystemVector<S> operator*(T s, SystemVector<S> a) { return a *= s; }

template <typename S>
SystemVector<S> conj(const SystemVector<S>& a) {
  SystemVector<S> r = a;
  for (int i = 0; i < a.components(); ++i) r.component(i) = conj(a.component(i));
  return r;
}

template <typename S>
S sobolev_norm(const SystemVector<S>& a, S s) {
  S acc = 0;
  for (int i = 0; i < a.components(); ++i) {
    S n = sobolev_norm(a.component(i), s);
    acc += n * n;
  }
  return std::sqrt(acc);
}

// Mode-by-mode action of a matrix symbol M(kappa) on a field vector. The
// per-mode product is the same matrix-vector code used in symbol mode.
template <typename Scalar, typename SymbolFn>
SystemVector<Scalar> apply_symbol(SymbolFn&& symbol, const SystemVector<Scalar>& x) {
  const GridSpec& g = x.grid();
  const int nc = x.components();
  if (nc != g.dim + 2) throw ShapeError("apply: component count must be dim + 2");
  const auto& wn = Wavenumbers<Scalar>::of(g);
  SystemVector<Scalar> out = SystemVector<Scalar>::zero(g);
  SymbolVector<Scalar> in(nc);
  Wavevector<Scalar> xi(g.dim);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const auto i = static_cast<Eigen::Index>(idx);
    auto m = unflatten(idx, g.dim, g.n);
    for (int a = 0; a < g.dim; ++a) xi(a) = wn.dkappa[m[a]];
    for (int c = 0; c < nc; ++c) in(c) = x.component(c).coeffs()[i];
    SymbolVector<Scalar> r = symbol(xi) * in;
    for (int c = 0; c < nc; ++c) out.component(c).coeffs()[i] = r(c);
  }
  for (int c = 0; c < nc; ++c) out.component(c).set_real(false);
  return out;
}

template <typename Scalar>
SystemVector<Scalar> apply_matrix(const SystemMatrix<Scalar>& m, const SystemVector<Scalar>& x) {
  return apply_symbol([&](const Wavevector<Scalar>&) -> const SystemMatrix<Scalar>& { return m; }, x);
}

// A(grad) U in field mode
template <typename Scalar>
SystemVector<Scalar> apply_a(const SystemVector<Scalar>& x) {
  return apply_symbol([](const Wavevector<Scalar>& xi) { return symbol_a<Scalar>(xi); }, x);
}

// ---- identity checks, symbol form ----

template <typename Scalar>
Scalar check_weak_transparency(int p, const Wavevector<Scalar>& xi) {
  const int d = static_cast<int>(xi.size());
  SystemMatrix<Scalar> pp = projector<Scalar>(d, p);
  return (pp * symbol_a<Scalar>(xi) * pp).cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar check_second_algebraic(const Wavevector<Scalar>& xi) {
  const int d = static_cast<int>(xi.size());
  SystemMatrix<Scalar> p1 = projector<Scalar>(d, 1);
  SystemMatrix<Scalar> a = symbol_a<Scalar>(xi);
  SystemMatrix<Scalar> lhs = p1 * a * partial_inverse<Scalar>(d, 1) * a * p1;
  SystemMatrix<Scalar> rhs = std::complex<Scalar>(0, Scalar(0.5) * xi.squaredNorm()) * p1;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

// L1^{-1} A (g e+) = (grad g, 0, 0) and
// L1^{-1} A L1^{-1} A (g e+) + L1^{-1}(0, h, 0) = (1/4)(0, -i(lap g + h), lap g + h), for g = g0 e^{i xi.x}.
template <typename Scalar>
Scalar pi1_identities_defect(std::complex<Scalar> g, std::complex<Scalar> h, const Wavevector<Scalar>& xi) {
  using C = std::complex<Scalar>;
  const int d = static_cast<int>(xi.size());
  SystemMatrix<Scalar> a = symbol_a<Scalar>(xi);
  SystemMatrix<Scalar> l1 = partial_inverse<Scalar>(d, 1);
  SymbolVector<Scalar> ge = g * basis_vectors<Scalar>(d).first;

  SymbolVector<Scalar> first = l1 * a * ge;
  SymbolVector<Scalar> first_expect = SymbolVector<Scalar>::Zero(d + 2);
  for (int k = 0; k < d; ++k) first_expect(k) = C(0, xi(k)) * g;

  SymbolVector<Scalar> hv = SymbolVector<Scalar>::Zero(d + 2);
  hv(d) = h;
  SymbolVector<Scalar> second = l1 * a * l1 * a * ge + l1 * hv;
  const C lap_g_h = -xi.squaredNorm() * g + h;
  SymbolVector<Scalar> second_expect = SymbolVector<Scalar>::Zero(d + 2);
  second_expect(d) = C(0, -0.25) * lap_g_h;
  second_expect(d + 1) = C(0.25, 0) * lap_g_h;

  return std::max((first - first_expect).cwiseAbs().maxCoeff(), (second - second_expect).cwiseAbs().maxCoeff());
}

}  // namespace nrl
