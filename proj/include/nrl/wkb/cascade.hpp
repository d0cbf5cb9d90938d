#pragma once

#include <complex>
#include <map>
#include <tuple>
#include <vector>

#include "nrl/algebra/system.hpp"
#include "nrl/nls/profile_state.hpp"
#include "nrl/spectral.hpp"

// Analytic time jets of every WKB amplitude.
//
//  g_n^{(j)}      from  2i dt g_n + dtt g_{n-2} - lap g_n + f_{n,1} = 0
//  u_{n,1}      = g_n
//  u_{n,p}      = (1-p^2)^{-1} (-f_{n-2,p} - dtt u_{n-4,p} + lap u_{n-2,p} - 2ip dt u_{n-2,p}),  n even, p >= 3
//  v_{n,p}      = dt u_{n-2,p} + ip u_{n,p}
//  w_{n,p}      = grad u_{n-1,p}
//  f_{n,p}      = lambda sum_{n1+n2+n3=n} sum_{p1+p2+p3=p} u_{n1,p1} u_{n2,p2} u_{n3,p3}
//  amplitude(n,-p) = conj(amplitude(n,p))
//
// The v/w forms cover U_{n,1} = g_n e+ + (grad g_{n-1}, dt g_{n-2}, 0) and the
// p >= 3 forms for both parities. Higher derivatives of products use Leibniz;
// every j-th derivative is produced by substituting the equations, never by
// differencing. Profiles above K_a are zero, amplitudes above K_a + 2 are zero.

namespace nrl {

// largest harmonic at order n
inline int max_harmonic(int n) {
  if (n < 0) return -1;
  return n % 2 == 0 ? n + 1 : n;
}

template <typename Scalar>
class Cascade {
 public:
  using F = Field<Scalar>;
  using C = std::complex<Scalar>;
  using Pad = Samples<Scalar>;

  explicit Cascade(const ProfileState<Scalar>& s) : grid_(s.grid()), lambda_(s.lambda()), ka_(s.ka()), zero_(s.grid(), true) {
    for (int n = 0; n <= ka_; n += 2) g_[{n, 0}] = s.g(n);
  }

  const GridSpec& grid() const { return grid_; }
  int ka() const { return ka_; }
  Scalar lambda() const { return lambda_; }
  const F& zero() const { return zero_; }

  bool profile_zero(int n) const { return n < 0 || n % 2 != 0 || n > ka_; }

  // structural zeros of u_{n,p}
  bool u_zero(int n, int p) const {
    const int ap = p < 0 ? -p : p;
    if (n < 0 || n % 2 != 0 || ap % 2 == 0 || ap > max_harmonic(n) || n > ka_ + 2) return true;
    if (ap == 1) return profile_zero(n);
    return n < 2;
  }

  // d^j/dt^j g_n
  const F& g(int n, int j) {
    if (profile_zero(n)) return zero_;
    auto key = std::make_pair(n, j);
    if (auto it = g_.find(key); it != g_.end()) return it->second;
    F r = g(n - 2, j + 1) - laplacian(g(n, j - 1)) + f(n, 1, j - 1);
    r *= C(0, Scalar(0.5));
    r.set_real(false);
    return g_.emplace(key, std::move(r)).first->second;
  }

  const F& u(int n, int p, int j) {
    if (u_zero(n, p)) return zero_;
    auto key = std::make_tuple(n, p, j);
    if (auto it = u_.find(key); it != u_.end()) return it->second;
    F r;
    if (p < 0) {
      r = conj(u(n, -p, j));
    } else if (p == 1) {
      r = g(n, j);
    } else {
      const Scalar sp = Scalar(p);
      r = laplacian(u(n - 2, p, j)) - f(n - 2, p, j) - u(n - 4, p, j + 2) + u(n - 2, p, j + 1) * C(0, -2 * sp);
      r *= Scalar(1) / (Scalar(1) - sp * sp);
    }
    r.set_real(false);
    return u_.emplace(key, std::move(r)).first->second;
  }

  F v(int n, int p, int j) {
    if (p < 0) return conj(v(n, -p, j));
    return u(n - 2, p, j + 1) + u(n, p, j) * C(0, Scalar(p));
  }

  std::vector<F> w(int n, int p, int j) { return gradient(u(n - 1, p, j)); }

  SystemVector<Scalar> amplitude(int n, int p, int j = 0) {
    SystemVector<Scalar> s;
    s.w = w(n, p, j);
    s.v = v(n, p, j);
    s.u = u(n, p, j);
    return s;
  }

  // j-th derivative of u_{n,p} on the dealiasing grid
  const Pad& u_padded(int n, int p, int j) {
    auto key = std::make_tuple(n, p, j);
    if (auto it = pad_.find(key); it != pad_.end()) return it->second;
    Pad r = p < 0 ? Pad(u_padded(n, -p, j).conjugate()) : to_padded_physical(u(n, p, j));
    return pad_.emplace(key, std::move(r)).first->second;
  }

  // j-th derivative of the harmonic coefficient f(u_a)_{n,p}
  const F& f(int n, int p, int j) {
    if (n < 0 || n % 2 != 0 || p % 2 == 0) return zero_;
    auto key = std::make_tuple(n, p, j);
    if (auto it = f_.find(key); it != f_.end()) return it->second;
    Pad acc = Pad::Zero(static_cast<Eigen::Index>(grid_.padded_size()));
    bool any = false;
    const int top = std::min(n, ka_ + 2);
    for (int n1 = 0; n1 <= top; n1 += 2)
      for (int n2 = 0; n1 + n2 <= n && n2 <= top; n2 += 2) {
        const int n3 = n - n1 - n2;
        if (n3 > top) continue;
        const int m1 = max_harmonic(n1), m2 = max_harmonic(n2), m3 = max_harmonic(n3);
        for (int p1 = -m1; p1 <= m1; p1 += 2)
          for (int p2 = -m2; p2 <= m2; p2 += 2) {
            const int p3 = p - p1 - p2;
            if (p3 < -m3 || p3 > m3) continue;
            if (u_zero(n1, p1) || u_zero(n2, p2) || u_zero(n3, p3)) continue;
            for (int a = 0; a <= j; ++a)
              for (int b = 0; a + b <= j; ++b) {
                const int c = j - a - b;
                const Scalar wgt = multinomial(j, a, b, c);
                acc += wgt * u_padded(n1, p1, a) * u_padded(n2, p2, b) * u_padded(n3, p3, c);
                any = true;
              }
          }
      }
    F r = any ? from_padded_physical(std::move(acc), grid_, false) : F(grid_, false);
    r *= lambda_;
    return f_.emplace(key, std::move(r)).first->second;
  }

 private:
  static Scalar multinomial(int j, int a, int b, int c) {
    auto fact = [](int k) {
      Scalar r = 1;
      for (int i = 2; i <= k; ++i) r *= Scalar(i);
      return r;
    };
    return fact(j) / (fact(a) * fact(b) * fact(c));
  }

  GridSpec grid_;
  Scalar lambda_;
  int ka_;
  F zero_;
  std::map<std::pair<int, int>, F> g_;
  std::map<std::tuple<int, int, int>, F> u_;
  std::map<std::tuple<int, int, int>, F> f_;
  std::map<std::tuple<int, int, int>, Pad> pad_;
};

}  // namespace nrl
