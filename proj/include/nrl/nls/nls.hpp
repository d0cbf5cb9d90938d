#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include "nrl/nls/profile_state.hpp"
#include "nrl/spectral.hpp"
#include "nrl/wkb/cascade.hpp"

// Limit equation 2i dt g - lap g + 3 lambda |g|^2 g = 0 and the linear
// corrector equations 2i dt g_n + dtt g_{n-2} - lap g_n + f(u_a)_{n,1} = 0.
// Free flow of both: mode kappa picks up e^{i |kappa|^2 t / 2}.

namespace nrl {

template <typename Scalar>
Field<Scalar> g0_initial(const Field<Scalar>& phi, const Field<Scalar>& psi) {
  require_same_grid(phi.grid(), psi.grid(), "g0_initial");
  if (!phi.is_real() || !psi.is_real()) throw DomainError("g0_initial: phi and psi must be real");
  Field<Scalar> g = (phi + psi * std::complex<Scalar>(0, -1)) * Scalar(0.5);
  g.set_real(false);
  return g;
}

// Closed form: Im g2(0) = -lap psi/4 + (21 lambda/64) phi^2 psi + (9 lambda/64) psi^3,
//              Re g2(0) = -(lambda/64)(phi^3 - 3 phi psi^2).
template <typename Scalar>
Field<Scalar> g2_initial(const Field<Scalar>& phi, const Field<Scalar>& psi, Scalar lambda) {
  require_same_grid(phi.grid(), psi.grid(), "g2_initial");
  if (!phi.is_real() || !psi.is_real()) throw DomainError("g2_initial: phi and psi must be real");
  Field<Scalar> ppp = triple_product(phi, phi, phi);
  Field<Scalar> ppq = triple_product(phi, phi, psi);
  Field<Scalar> pqq = triple_product(phi, psi, psi);
  Field<Scalar> qqq = triple_product(psi, psi, psi);
  Field<Scalar> im = laplacian(psi) * Scalar(-0.25) + ppq * (Scalar(21) * lambda / 64) + qqq * (Scalar(9) * lambda / 64);
  Field<Scalar> re = (ppp - pqq * Scalar(3)) * (-lambda / 64);
  Field<Scalar> g = re + im * std::complex<Scalar>(0, 1);
  g.set_real(false);
  return g;
}

template <typename Scalar>
Field<Scalar> free_flow(const Field<Scalar>& g, Scalar dt) {
  const auto& k2 = Wavenumbers<Scalar>::of(g.grid()).k2;
  Field<Scalar> out = g;
  for (Eigen::Index i = 0; i < k2.size(); ++i) out.coeffs()[i] *= std::polar(Scalar(1), k2[i] * dt / 2);
  out.set_real(false);
  return out;
}

// Strang splitting: half free flow, exact nonlinear phase e^{i (3 lambda/2)|g|^2 dt}, half free flow.
// Negative dt runs the same composition backwards.
template <typename Scalar>
Field<Scalar> nls_step(const Field<Scalar>& g, Scalar dt, Scalar lambda) {
  Field<Scalar> h = free_flow(g, dt / 2);
  if (lambda != Scalar(0)) {
    Samples<Scalar> x = to_physical(h);
    const Scalar c = Scalar(1.5) * lambda * dt;
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] *= std::polar(Scalar(1), c * std::norm(x[i]));
    h = to_spectral(std::move(x), g.grid(), false);
  }
  return free_flow(h, dt / 2);
}

template <typename Scalar>
Scalar nls_mass(const Field<Scalar>& g) {
  Scalar n = l2_norm(g);
  return n * n;
}

// (1/2) int |grad g|^2 + (3 lambda/4) int |g|^4
template <typename Scalar>
Scalar nls_energy(const Field<Scalar>& g, Scalar lambda) {
  Scalar kin = 0;
  for (const auto& d : gradient(g)) {
    Scalar n = l2_norm(d);
    kin += n * n;
  }
  Samples<Scalar> x = to_padded_physical(g);
  Scalar quart = x.abs2().square().sum() * Scalar(g.grid().volume()) / Scalar(g.grid().padded_size());
  return kin / 2 + Scalar(0.75) * lambda * quart;
}

// Exponential (Lawson) Heun step for dt g = -(i/2) lap g + S(t, g):
//   g* = E(g + dt S(t, g)),  g+ = E g + (dt/2)(E S(t, g) + S(t + dt, g*)),  E = free flow over dt.
template <typename Scalar>
using Source = std::function<Field<Scalar>(Scalar t, const Field<Scalar>& g)>;

template <typename Scalar>
Field<Scalar> lawson_heun_step(const Field<Scalar>& g, Scalar t, Scalar dt, const Source<Scalar>& source) {
  Field<Scalar> s0 = source(t, g);
  Field<Scalar> gstar = free_flow(Field<Scalar>(g + s0 * dt), dt);
  Field<Scalar> s1 = source(t + dt, gstar);
  Field<Scalar> out = free_flow(Field<Scalar>(g + s0 * (dt / 2)), dt) + s1 * (dt / 2);
  out.set_real(false);
  return out;
}

// Everything in 2i dt g_n = lap g_n - dtt g_{n-2} - f_{n,1} except the dispersion:
//   S = (i/2)(dtt g_{n-2} + f(u_a)_{n,1}),  evaluated with g_n replaced by `gn`.
template <typename Scalar>
Field<Scalar> corrector_source(int n, const ProfileState<Scalar>& lower, const Field<Scalar>& gn) {
  ProfileState<Scalar> full = lower.truncated(n);
  full.g_mut(n) = gn;
  Cascade<Scalar> c(full);
  Field<Scalar> r = c.g(n - 2, 2) + c.f(n, 1, 0);
  r *= std::complex<Scalar>(0, Scalar(0.5));
  return r;
}

// Advance g_n (n even >= 2) from `before` to `after`, where `after` already holds
// the lower profiles at before.t + dt.
template <typename Scalar>
Field<Scalar> corrector_step(int n, const ProfileState<Scalar>& before, const ProfileState<Scalar>& after, Scalar dt) {
  if (n < 2 || n % 2 != 0 || n > before.ka()) throw DomainError("corrector_step: n must be even, 2 <= n <= K_a");
  const Scalar tol = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * (std::abs(before.t) + std::abs(dt) + 1);
  if (std::abs(after.t - (before.t + dt)) > tol) throw DomainError("corrector_step: profiles are not aligned in time");
  Source<Scalar> src = [&](Scalar t, const Field<Scalar>& gn) {
    const bool first = std::abs(t - before.t) <= std::abs(t - after.t);
    return corrector_source(n, first ? before : after, gn);
  };
  return lawson_heun_step(before.g(n), before.t, dt, src);
}

// Co-advance all profiles by dt: g0 first, then g2, g4, ...
template <typename Scalar>
void advance_profiles(ProfileState<Scalar>& s, Scalar dt) {
  ProfileState<Scalar> next = s;
  next.t = s.t + dt;
  // profiles stay in the Nyquist-free subspace, where grad.grad equals the Laplacian
  next.g_mut(0) = drop_nyquist(nls_step(s.g(0), dt, s.lambda()));
  for (int n = 2; n <= s.ka(); n += 2) next.g_mut(n) = drop_nyquist(corrector_step(n, s, next, dt));
  s = std::move(next);
}

// Advance to time t_end with steps no longer than dt_max (last step shortened evenly).
template <typename Scalar>
void advance_profiles_to(ProfileState<Scalar>& s, Scalar t_end, Scalar dt_max) {
  const Scalar span = t_end - s.t;
  if (span == Scalar(0)) return;
  const long steps = std::max<long>(1, static_cast<long>(std::ceil(std::abs(span) / dt_max - Scalar(1e-9))));
  const Scalar dt = span / Scalar(steps);
  const Scalar t0 = s.t;
  for (long k = 0; k < steps; ++k) {
    advance_profiles(s, dt);
    s.t = t0 + span * Scalar(k + 1) / Scalar(steps);
  }
  s.t = t_end;
}

// Analytic dt g_n and dtt g_n from the equations.
template <typename Scalar>
Field<Scalar> dt_profile(int n, const ProfileState<Scalar>& s) {
  if (n > s.ka() && n % 2 == 0 && n <= s.ka() + 2) return Field<Scalar>(s.grid(), true);
  if (n > s.ka() + 2) throw DomainError("dt_profile: profile g_" + std::to_string(n) + " not available");
  Cascade<Scalar> c(s);
  return c.g(n, 1);
}

template <typename Scalar>
Field<Scalar> dt2_profile(int n, const ProfileState<Scalar>& s) {
  if (n > s.ka() && n % 2 == 0 && n <= s.ka() + 2) return Field<Scalar>(s.grid(), true);
  if (n > s.ka() + 2) throw DomainError("dt2_profile: profile g_" + std::to_string(n) + " not available");
  Cascade<Scalar> c(s);
  return c.g(n, 2);
}

// Initial profiles. g_0 = (phi - i psi)/2; for even n >= 2 the data make U_n(0)
// and U_{n+1}(0) vanish (odd orders vanish automatically):
//   Re g_n(0) = -Re sum_{p>=3} u_{n,p}(0)
//   Im g_n(0) =  Re [ dt g_{n-2} + sum_{p>=3} (dt u_{n-2,p} + ip u_{n,p}) ](0)
template <typename Scalar>
ProfileState<Scalar> initial_profiles(const Field<Scalar>& phi, const Field<Scalar>& psi, Scalar lambda, int ka) {
  ProfileState<Scalar> s(phi.grid(), lambda, ka);
  s.t = 0;
  s.g_mut(0) = drop_nyquist(g0_initial(phi, psi));
  for (int n = 2; n <= ka; n += 2) {
    Cascade<Scalar> c(s.truncated(n - 2));
    Field<Scalar> re(s.grid(), true), im = real_part(c.g(n - 2, 1));
    for (int p = 3; p <= max_harmonic(n); p += 2) {
      re -= real_part(c.u(n, p, 0));
      im += real_part(c.v(n, p, 0));
    }
    Field<Scalar> gn = re + im * std::complex<Scalar>(0, 1);
    gn.set_real(false);
    s.g_mut(n) = drop_nyquist(gn);
  }
  return s;
}

}  // namespace nrl
