#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "nrl/algebra/system.hpp"
#include "nrl/nls/nls.hpp"
#include "nrl/wkb/cascade.hpp"

// U_a = sum_{n=0}^{K_a+2} eps^n sum_{p in H_n} e^{i p theta} U_{n,p},  theta = t / eps^2.

namespace nrl {

// odd p with |p| <= p(n)
inline std::vector<int> harmonic_set(int n, int ka) {
  if (n < 0 || n > ka + 2) throw DomainError("harmonic_set: order " + std::to_string(n) + " outside 0..K_a+2");
  std::vector<int> h;
  const int m = max_harmonic(n);
  for (int p = -m; p <= m; p += 2) h.push_back(p);
  return h;
}

template <typename Scalar>
struct HarmonicAmplitude {
  int n = 0;
  int p = 1;
  SystemVector<Scalar> value;
  Field<Scalar> dt_u, dtt_u, dt_v, dtt_v;
};

// U_{n,1} = g_n e+ + (grad g_{n-1}, dt g_{n-2}, 0)
template <typename Scalar>
HarmonicAmplitude<Scalar> build_leading(int n, Cascade<Scalar>& c) {
  using Cx = std::complex<Scalar>;
  HarmonicAmplitude<Scalar> a;
  a.n = n;
  a.p = 1;
  a.value.w = gradient(c.g(n - 1, 0));
  a.value.v = c.g(n, 0) * Cx(0, 1) + c.g(n - 2, 1);
  a.value.u = c.g(n, 0);
  a.dt_u = c.g(n, 1);
  a.dtt_u = c.g(n, 2);
  a.dt_v = c.g(n, 1) * Cx(0, 1) + c.g(n - 2, 2);
  a.dtt_v = c.g(n, 2) * Cx(0, 1) + c.g(n - 2, 3);
  return a;
}

// n even, p >= 3:
//   u_{n,p} = (1-p^2)^{-1}(-f_{n-2,p} - dtt u_{n-4,p} + lap u_{n-2,p} - 2ip dt u_{n-2,p})
//   v_{n,p} = dt u_{n-2,p} + ip u_{n,p},  w_{n,p} = 0
template <typename Scalar>
HarmonicAmplitude<Scalar> build_higher_even(int n, int p, Cascade<Scalar>& c) {
  if (n % 2 != 0 || p < 3) throw DomainError("build_higher_even: need even n and p >= 3");
  using Cx = std::complex<Scalar>;
  HarmonicAmplitude<Scalar> a;
  a.n = n;
  a.p = p;
  const Cx ip(0, Scalar(p));
  auto u_of = [&](int j) {
    Field<Scalar> r = laplacian(c.u(n - 2, p, j)) - c.f(n - 2, p, j) - c.u(n - 4, p, j + 2) + c.u(n - 2, p, j + 1) * (Scalar(-2) * ip);
    return r * (Scalar(1) / (Scalar(1) - Scalar(p) * Scalar(p)));
  };
  a.value.u = u_of(0);
  a.value.v = c.u(n - 2, p, 1) + a.value.u * ip;
  for (int k = 0; k < c.grid().dim; ++k) a.value.w.emplace_back(c.grid(), true);
  a.dt_u = u_of(1);
  a.dtt_u = u_of(2);
  a.dt_v = c.u(n - 2, p, 2) + a.dt_u * ip;
  a.dtt_v = c.u(n - 2, p, 3) + a.dtt_u * ip;
  return a;
}

// n odd, p >= 3: U_{n,p} = (grad u_{n-1,p}, 0, 0)
template <typename Scalar>
HarmonicAmplitude<Scalar> build_higher_odd(int n, int p, Cascade<Scalar>& c) {
  if (n % 2 == 0 || p < 3) throw DomainError("build_higher_odd: need odd n and p >= 3");
  HarmonicAmplitude<Scalar> a;
  a.n = n;
  a.p = p;
  a.value.w = gradient(c.u(n - 1, p, 0));
  a.value.v = Field<Scalar>(c.grid(), true);
  a.value.u = Field<Scalar>(c.grid(), true);
  a.dt_u = a.dtt_u = a.dt_v = a.dtt_v = Field<Scalar>(c.grid(), true);
  return a;
}

// f(u_a)_{n,p}
template <typename Scalar>
Field<Scalar> cubic_harmonic_coefficient(int n, int p, Cascade<Scalar>& c) {
  return c.f(n, p, 0);
}

template <typename Scalar>
HarmonicAmplitude<Scalar> conj(const HarmonicAmplitude<Scalar>& a) {
  HarmonicAmplitude<Scalar> b;
  b.n = a.n;
  b.p = -a.p;
  b.value = conj(a.value);
  b.dt_u = conj(a.dt_u);
  b.dtt_u = conj(a.dtt_u);
  b.dt_v = conj(a.dt_v);
  b.dtt_v = conj(a.dtt_v);
  return b;
}

// e^{i p theta} X + conj(e^{i p theta} X), exactly Hermitian
template <typename Scalar>
Field<Scalar> phase_pair(const Field<Scalar>& x, int p, Scalar theta) {
  Field<Scalar> y = x * std::polar(Scalar(1), Scalar(p) * theta);
  Field<Scalar> r = y + conj(y);
  r.set_real(true);
  return r;
}

template <typename Scalar>
SystemVector<Scalar> phase_pair(const SystemVector<Scalar>& x, int p, Scalar theta) {
  SystemVector<Scalar> r = x;
  for (int i = 0; i < x.components(); ++i) r.component(i) = phase_pair(x.component(i), p, theta);
  return r;
}

template <typename Scalar>
class WKBExpansion {
 public:
  WKBExpansion(const ProfileState<Scalar>& profiles, Scalar eps)
      : profiles_(&profiles), cascade_(profiles), eps_(eps), t_(profiles.t), ka_(profiles.ka()) {
    if (!(eps > Scalar(0) && eps < Scalar(1))) throw DomainError("wkb: eps must lie in (0, 1)");
  }

  int ka() const { return ka_; }
  Scalar eps() const { return eps_; }
  Scalar t() const { return t_; }
  Scalar theta() const { return t_ / (eps_ * eps_); }
  const GridSpec& grid() const { return cascade_.grid(); }
  const ProfileState<Scalar>& profiles() const { return *profiles_; }
  Cascade<Scalar>& cascade() { return cascade_; }

  // (n, p) with p > 0 is built from the recursions; negative p is the conjugate
  const HarmonicAmplitude<Scalar>& amplitude(int n, int p) {
    auto key = std::make_pair(n, p);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    HarmonicAmplitude<Scalar> a;
    if (n < 0 || n > ka_ + 2) throw DomainError("wkb: order outside 0..K_a+2");
    if (p % 2 == 0 || std::abs(p) > max_harmonic(n)) {
      a.n = n;
      a.p = p;
      a.value = SystemVector<Scalar>::zero(grid());
      a.dt_u = a.dtt_u = a.dt_v = a.dtt_v = Field<Scalar>(grid(), true);
    } else if (p < 0) {
      a = conj(amplitude(n, -p));
    } else if (p == 1) {
      a = build_leading(n, cascade_);
    } else if (n % 2 == 0) {
      a = build_higher_even(n, p, cascade_);
    } else {
      a = build_higher_odd(n, p, cascade_);
    }
    return table_.emplace(key, std::move(a)).first->second;
  }

  // populate the full table
  void build() {
    for (int n = 0; n <= ka_ + 2; ++n)
      for (int p : harmonic_set(n, ka_)) amplitude(n, p);
  }
  const std::map<std::pair<int, int>, HarmonicAmplitude<Scalar>>& table() const { return table_; }

  // U_n(theta) = sum_p e^{ip theta} U_{n,p}
  SystemVector<Scalar> order(int n) {
    SystemVector<Scalar> s = SystemVector<Scalar>::zero(grid());
    for (int p = 1; p <= max_harmonic(n); p += 2) s += phase_pair(amplitude(n, p).value, p, theta());
    return s;
  }

 private:
  const ProfileState<Scalar>* profiles_;
  Cascade<Scalar> cascade_;
  Scalar eps_, t_;
  int ka_;
  std::map<std::pair<int, int>, HarmonicAmplitude<Scalar>> table_;
};

template <typename Scalar>
struct Assembled {
  Field<Scalar> u;
  SystemVector<Scalar> U;
};

template <typename Scalar>
Assembled<Scalar> assemble(WKBExpansion<Scalar>& e) {
  SystemVector<Scalar> U = SystemVector<Scalar>::zero(e.grid());
  Scalar en = 1;
  for (int n = 0; n <= e.ka() + 2; ++n) {
    U += en * e.order(n);
    en *= e.eps();
  }
  for (int i = 0; i < U.components(); ++i) U.component(i).set_real(true);
  return {U.u, U};
}

// u-component only, straight from the jets: sum_n eps^n sum_p e^{ip theta} u_{n,p}
template <typename Scalar>
Field<Scalar> assemble_u(Cascade<Scalar>& c, Scalar eps, Scalar theta, int top_order) {
  Field<Scalar> u(c.grid(), true);
  Scalar en = 1;
  for (int n = 0; n <= top_order; ++n) {
    for (int p = 1; p <= max_harmonic(n); p += 2)
      if (!c.u_zero(n, p)) u += en * phase_pair(c.u(n, p, 0), p, theta);
    en *= eps;
  }
  return u;
}

// first-order approximation u_0 = e^{i theta} g_0 + c.c.
template <typename Scalar>
Field<Scalar> leading_order_u(const Field<Scalar>& g0, Scalar theta) {
  return phase_pair(g0, 1, theta);
}

// ||U(0) - U_a(0)||_{H^sigma} and the per-order norms ||U_n(0)||
template <typename Scalar>
struct InitialPerturbation {
  Scalar total = 0;
  std::vector<Scalar> per_order;  // index n = 0..K_a+2
};

template <typename Scalar>
InitialPerturbation<Scalar> initial_perturbation(WKBExpansion<Scalar>& e, const SystemVector<Scalar>& exact, Scalar sigma) {
  if (e.t() != Scalar(0)) throw DomainError("initial_perturbation: expansion must sit at t = 0");
  InitialPerturbation<Scalar> r;
  for (int n = 0; n <= e.ka() + 2; ++n) r.per_order.push_back(sobolev_norm(e.order(n), sigma));
  r.total = sobolev_norm(SystemVector<Scalar>(exact - assemble(e).U), sigma);
  return r;
}

// Phi_{n,p} = dt U_{n,p} - A U_{n+1,p} + L_p U_{n+2,p} - F_{n,p},  F_{n,p} = (0, -f(u_a)_{n,p}, 0)
template <typename Scalar>
SystemVector<Scalar> cascade_defect(Cascade<Scalar>& c, int n, int p) {
  SystemVector<Scalar> phi = c.amplitude(n, p, 1);
  phi -= apply_a(c.amplitude(n + 1, p, 0));
  phi += apply_matrix(l_matrix<Scalar>(c.grid().dim, p), c.amplitude(n + 2, p, 0));
  phi.v += c.f(n, p, 0);
  return phi;
}

// R = sum_{p in H_{K+2}} e^{ip theta}(dt U_{K+1,p} + eps dt U_{K+2,p} - A U_{K+2,p})
//     - sum_{m=K+2}^{3(K+2)} eps^{m-K-1} F(U_a)_m,
// so that dt U_a - A U_a / eps + A0 U_a / eps^2 - F(U_a) = eps^{K+1} R.
template <typename Scalar>
SystemVector<Scalar> residual_formula(WKBExpansion<Scalar>& e) {
  Cascade<Scalar>& c = e.cascade();
  const int K = e.ka();
  const Scalar eps = e.eps(), theta = e.theta();
  SystemVector<Scalar> r = SystemVector<Scalar>::zero(e.grid());
  for (int p = 1; p <= max_harmonic(K + 2); p += 2) {
    SystemVector<Scalar> x = c.amplitude(K + 1, p, 1);
    x += eps * c.amplitude(K + 2, p, 1);
    x -= apply_a(c.amplitude(K + 2, p, 0));
    r += phase_pair(x, p, theta);
  }
  // nonlinear tail, built from u_k(theta) on the dealiasing grid
  std::vector<Samples<Scalar>> uk;
  for (int k = 0; k <= K + 2; ++k) {
    Samples<Scalar> s = Samples<Scalar>::Zero(static_cast<Eigen::Index>(e.grid().padded_size()));
    for (int p = -max_harmonic(k); p <= max_harmonic(k); p += 2)
      if (!c.u_zero(k, p)) s += std::polar(Scalar(1), Scalar(p) * theta) * c.u_padded(k, p, 0);
    uk.push_back(std::move(s));
  }
  Samples<Scalar> tail = Samples<Scalar>::Zero(static_cast<Eigen::Index>(e.grid().padded_size()));
  for (int m1 = 0; m1 <= K + 2; ++m1)
    for (int m2 = 0; m2 <= K + 2; ++m2)
      for (int m3 = 0; m3 <= K + 2; ++m3) {
        const int m = m1 + m2 + m3;
        if (m < K + 2) continue;
        tail += std::pow(eps, Scalar(m - K - 1)) * uk[m1] * uk[m2] * uk[m3];
      }
  // -F_m has v-component +lambda u^3 terms
  r.v += from_padded_physical(std::move(tail), e.grid(), true) * c.lambda();
  for (int i = 0; i < r.components(); ++i) r.component(i).set_real(true);
  return r;
}

// Centered-difference defect of U_a:
//   (U_a(t+h) - U_a(t-h)) / 2h - A U_a / eps + A0 U_a / eps^2 - F(U_a)
// with profiles carried to t +- h by one profile step each.
template <typename Scalar>
SystemVector<Scalar> residual_fd(const ProfileState<Scalar>& s, Scalar eps, Scalar h) {
  ProfileState<Scalar> plus = s, minus = s;
  advance_profiles(plus, h);
  advance_profiles(minus, -h);
  WKBExpansion<Scalar> ep(plus, eps), em(minus, eps), e0(s, eps);
  SystemVector<Scalar> up = assemble(ep).U, um = assemble(em).U;
  SystemVector<Scalar> u0 = assemble(e0).U;
  SystemVector<Scalar> d = up - um;
  d *= Scalar(1) / (2 * h);
  d -= (Scalar(1) / eps) * apply_a(u0);
  d += (Scalar(1) / (eps * eps)) * apply_matrix(a0_matrix<Scalar>(s.grid().dim), u0);
  d.v += cube(u0.u) * s.lambda();
  return d;
}

}  // namespace nrl
